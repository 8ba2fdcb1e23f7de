//! Algebraic constructions of Costas arrays (Welch W1/W2, Golomb G2/G3) and
//! of Costas cubes built from them, with parameter sweeps over all
//! admissible primitive elements.
//!
//! Every construction computes exponents through discrete-log tables and
//! checks that each exponent lands in the range the underlying theorem
//! guarantees; a violation is reported as [`Error::ExponentRange`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube::CostasCube;
use crate::error::{Error, Result};
use crate::gf::{prime_power, FieldElement, FieldSpec, LogTable};
use crate::perm::Permutation;
use crate::symmetry::canonical_array;
use crate::symmetry::canonical_cube;

/// Largest order a sweep or catalog will run at by default.
pub const DEFAULT_MAX_SWEEP_ORDER: usize = 29;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ArrayFamily {
    W1,
    G2,
    W2,
    G3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CubeFamily {
    G2x3,
    W2W2G2,
    G3I,
    G3II,
}

impl ArrayFamily {
    pub const ALL: [ArrayFamily; 4] = [
        ArrayFamily::W1,
        ArrayFamily::G2,
        ArrayFamily::W2,
        ArrayFamily::G3,
    ];
}

impl CubeFamily {
    pub const ALL: [CubeFamily; 4] = [
        CubeFamily::G2x3,
        CubeFamily::W2W2G2,
        CubeFamily::G3I,
        CubeFamily::G3II,
    ];

    /// Field size needed for a cube of the given order.
    pub fn field_size(self, order: usize) -> usize {
        match self {
            CubeFamily::G2x3 | CubeFamily::W2W2G2 => order + 2,
            CubeFamily::G3I | CubeFamily::G3II => order + 3,
        }
    }
}

impl fmt::Display for ArrayFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrayFamily::W1 => "W1",
            ArrayFamily::G2 => "G2",
            ArrayFamily::W2 => "W2",
            ArrayFamily::G3 => "G3",
        })
    }
}

impl fmt::Display for CubeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubeFamily::G2x3 => "cube-g2x3",
            CubeFamily::W2W2G2 => "cube-w2w2g2",
            CubeFamily::G3I => "cube-g3-i",
            CubeFamily::G3II => "cube-g3-ii",
        })
    }
}

/// Any of the eight constructions, by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Array(ArrayFamily),
    Cube(CubeFamily),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Array(a) => write!(f, "{}", a.to_string().to_lowercase()),
            Family::Cube(c) => write!(f, "{c}"),
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "w1" => Family::Array(ArrayFamily::W1),
            "g2" => Family::Array(ArrayFamily::G2),
            "w2" => Family::Array(ArrayFamily::W2),
            "g3" => Family::Array(ArrayFamily::G3),
            "cube-g2x3" => Family::Cube(CubeFamily::G2x3),
            "cube-w2w2g2" => Family::Cube(CubeFamily::W2W2G2),
            "cube-g3-i" => Family::Cube(CubeFamily::G3I),
            "cube-g3-ii" => Family::Cube(CubeFamily::G3II),
            other => return Err(format!("unknown construction family {other:?}")),
        })
    }
}

/// A construction together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionId {
    pub family: Family,
    pub field: FieldSpec,
    /// `φ`, then `ρ`/`ψ` as the family requires.
    pub elements: Vec<FieldElement>,
    /// Column shift `c` for W1.
    pub shift: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constructed {
    Array(Permutation),
    Cube(CostasCube),
}

impl ConstructionId {
    pub fn build(&self) -> Result<Constructed> {
        let f = &self.field;
        let need = |count: usize| -> Result<&[FieldElement]> {
            if self.elements.len() != count {
                return Err(Error::Inadmissible(format!(
                    "{} takes {count} field element(s), got {}",
                    self.family,
                    self.elements.len()
                )));
            }
            Ok(&self.elements)
        };
        Ok(match self.family {
            Family::Array(ArrayFamily::W1) => {
                let e = need(1)?;
                Constructed::Array(w1(f, e[0], self.shift.unwrap_or(0))?)
            }
            Family::Array(ArrayFamily::G2) => {
                let e = need(2)?;
                Constructed::Array(g2(f, e[0], e[1])?)
            }
            Family::Array(ArrayFamily::W2) => Constructed::Array(w2(f, need(1)?[0])?),
            Family::Array(ArrayFamily::G3) => Constructed::Array(g3(f, need(1)?[0])?),
            Family::Cube(CubeFamily::G2x3) => {
                let e = need(3)?;
                Constructed::Cube(cube_g2x3(f, e[0], e[1], e[2])?)
            }
            Family::Cube(CubeFamily::W2W2G2) => {
                let e = need(2)?;
                Constructed::Cube(cube_w2w2g2(f, e[0], e[1])?)
            }
            Family::Cube(CubeFamily::G3I) => Constructed::Cube(cube_g3_variant_i(f, need(1)?[0])?),
            Family::Cube(CubeFamily::G3II) => {
                Constructed::Cube(cube_g3_variant_ii(f, need(1)?[0])?)
            }
        })
    }
}

fn require_prime_field(field: &FieldSpec) -> Result<()> {
    if !field.is_prime_field() {
        return Err(Error::NotPrimeField {
            p: field.p(),
            m: field.m(),
        });
    }
    Ok(())
}

fn require_q_above_3(field: &FieldSpec) -> Result<()> {
    if field.q() <= 3 {
        return Err(Error::FieldTooSmall(field.q()));
    }
    Ok(())
}

fn table_for(field: &FieldSpec, e: FieldElement, name: &str) -> Result<LogTable> {
    if e == field.zero() || !field.is_primitive(e)? {
        return Err(Error::NotPrimitive(format!(
            "{name} = {}",
            field.format_element(e)
        )));
    }
    field.log_table(e)
}

fn in_range(exponent: i64, max: usize, context: &'static str) -> Result<usize> {
    if exponent < 1 || exponent as usize > max {
        return Err(Error::ExponentRange {
            exponent: exponent.max(0) as u64,
            max: max as u64,
            context,
        });
    }
    Ok(exponent as usize)
}

/// Welch W1: `σ(j) = φ^(j+c)` over GF(p), order `p - 1`.
pub fn w1(field: &FieldSpec, phi: FieldElement, c: u64) -> Result<Permutation> {
    require_prime_field(field)?;
    if field.p() <= 2 {
        return Err(Error::FieldTooSmall(field.q()));
    }
    let t = table_for(field, phi, "φ")?;
    let n = field.q() as usize - 1;
    let values = (1..=n)
        .map(|j| {
            let v = t.power(j as i64 + c as i64);
            in_range(field.to_int(v).expect("prime field") as i64, n, "w1")
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Permutation::from_vec_unchecked(values))
}

/// Golomb G2: `s[i][j] = [φ^i + ρ^j = 1]`, order `q - 2`.
pub fn g2(field: &FieldSpec, phi: FieldElement, rho: FieldElement) -> Result<Permutation> {
    require_q_above_3(field)?;
    let log_phi = table_for(field, phi, "φ")?;
    let rho_t = table_for(field, rho, "ρ")?;
    let n = field.q() as usize - 2;
    let one = field.one();
    let values = (1..=n)
        .map(|j| {
            let target = field.sub(one, rho_t.power(j as i64));
            in_range(log_phi.dlog(target)? as i64, n, "g2")
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Permutation::from_vec_unchecked(values))
}

/// Welch W2: `σ(j) = φ^j - 1` over GF(p), order `p - 2`.
pub fn w2(field: &FieldSpec, phi: FieldElement) -> Result<Permutation> {
    require_prime_field(field)?;
    require_q_above_3(field)?;
    let t = table_for(field, phi, "φ")?;
    let n = field.q() as usize - 2;
    let values = (1..=n)
        .map(|j| {
            let v = field.to_int(t.power(j as i64)).expect("prime field") as i64;
            in_range(v - 1, n, "w2")
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Permutation::from_vec_unchecked(values))
}

fn g3_bases(field: &FieldSpec, phi: FieldElement) -> Result<(LogTable, LogTable)> {
    require_q_above_3(field)?;
    let log_phi = table_for(field, phi, "φ")?;
    let one_minus = field.sub(field.one(), phi);
    if one_minus == field.zero() || !field.is_primitive(one_minus)? {
        return Err(Error::Inadmissible(format!(
            "1−φ = {} is not primitive",
            field.format_element(one_minus)
        )));
    }
    Ok((log_phi, field.log_table(one_minus)?))
}

/// Golomb G3: `s[i][j] = [φ^(i+1) + (1-φ)^(j+1) = 1]`, order `q - 3`.
pub fn g3(field: &FieldSpec, phi: FieldElement) -> Result<Permutation> {
    let (log_phi, base) = g3_bases(field, phi)?;
    let n = field.q() as usize - 3;
    let one = field.one();
    let values = (1..=n)
        .map(|j| {
            let target = field.sub(one, base.power(j as i64 + 1));
            in_range(log_phi.dlog(target)? as i64 - 1, n, "g3")
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Permutation::from_vec_unchecked(values))
}

/// Cube whose three projections are G2 arrays:
/// `φ^i + ρ^(-j) = 1`, `φ^(-i) + ψ^k = 1` (and `ρ^j + ψ^(-k) = 1`), order `q - 2`.
pub fn cube_g2x3(
    field: &FieldSpec,
    phi: FieldElement,
    rho: FieldElement,
    psi: FieldElement,
) -> Result<CostasCube> {
    require_q_above_3(field)?;
    let phi_t = table_for(field, phi, "φ")?;
    let log_rho = table_for(field, rho, "ρ")?;
    let log_psi = table_for(field, psi, "ψ")?;
    let n = field.q() as usize - 2;
    let order = field.q() as i64 - 1;
    let one = field.one();
    let rows = (1..=n as i64)
        .map(|i| {
            let j = (-(log_rho.dlog(field.sub(one, phi_t.power(i)))? as i64)).rem_euclid(order);
            let k = log_psi.dlog(field.sub(one, phi_t.power(-i)))? as i64;
            Ok((
                in_range(j, n, "cube-g2x3 j")?,
                in_range(k, n, "cube-g2x3 k")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    CostasCube::new(rows)
}

/// Cube with `i = φ^j - 1 = -ψ^k` over GF(p), order `p - 2`.
pub fn cube_w2w2g2(field: &FieldSpec, phi: FieldElement, psi: FieldElement) -> Result<CostasCube> {
    require_prime_field(field)?;
    require_q_above_3(field)?;
    let log_phi = table_for(field, phi, "φ")?;
    let log_psi = table_for(field, psi, "ψ")?;
    let n = field.q() as usize - 2;
    let rows = (1..=n as i64)
        .map(|i| {
            let j = log_phi.dlog(field.from_int(i + 1))? as i64;
            let k = log_psi.dlog(field.from_int(-i))? as i64;
            Ok((
                in_range(j, n, "cube-w2w2g2 j")?,
                in_range(k, n, "cube-w2w2g2 k")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    CostasCube::new(rows)
}

struct G3CubeTables {
    phi: LogTable,
    one_minus_phi: LogTable,
    one_minus_phi_inv: LogTable,
}

fn g3_cube_tables(field: &FieldSpec, phi: FieldElement) -> Result<G3CubeTables> {
    let (phi_t, one_minus_phi) = g3_bases(field, phi)?;
    let inv = field.inv(phi)?;
    let other = field.sub(field.one(), inv);
    if other == field.zero() || !field.is_primitive(other)? {
        return Err(Error::Inadmissible(format!(
            "1−φ⁻¹ = {} is not primitive",
            field.format_element(other)
        )));
    }
    Ok(G3CubeTables {
        phi: phi_t,
        one_minus_phi,
        one_minus_phi_inv: field.log_table(other)?,
    })
}

fn g3_cube(field: &FieldSpec, phi: FieldElement, second_variant: bool) -> Result<CostasCube> {
    if field.q() <= 3 {
        return Err(Error::FieldTooSmall(field.q()));
    }
    let t = g3_cube_tables(field, phi)?;
    let n = field.q() as usize - 3;
    let one = field.one();
    let rows = (1..=n as i64)
        .map(|i| {
            let j = t.one_minus_phi.dlog(field.sub(one, t.phi.power(i + 1)))? as i64 - 1;
            let k_exp = if second_variant { i } else { -(i + 1) };
            let k = t
                .one_minus_phi_inv
                .dlog(field.sub(one, t.phi.power(k_exp)))? as i64
                - 1;
            Ok((in_range(j, n, "cube-g3 j")?, in_range(k, n, "cube-g3 k")?))
        })
        .collect::<Result<Vec<_>>>()?;
    CostasCube::new(rows)
}

/// G3-projection cube, first variant, order `q - 3`.
pub fn cube_g3_variant_i(field: &FieldSpec, phi: FieldElement) -> Result<CostasCube> {
    g3_cube(field, phi, false)
}

/// G3-projection cube, second variant, order `q - 3`.
pub fn cube_g3_variant_ii(field: &FieldSpec, phi: FieldElement) -> Result<CostasCube> {
    g3_cube(field, phi, true)
}

/// Result of [`k_reversal`]. The rule preserves the permutation-cube
/// property but not necessarily the Costas property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KReversal {
    pub cube: CostasCube,
    pub is_costas: bool,
}

/// Keeps each row's `j` and takes `k` from row `n + 1 - i`.
pub fn k_reversal(cube: &CostasCube) -> KReversal {
    let rows = cube.rows();
    let n = rows.len();
    let out: Vec<(usize, usize)> = (0..n)
        .map(|idx| (rows[idx].0, rows[n - 1 - idx].1))
        .collect();
    let cube = CostasCube::from_rows_unchecked(out);
    let is_costas = cube.is_costas_cube();
    KReversal { cube, is_costas }
}

/// Removes the row and column through a 1 at `(1, 1)`. `None` if `σ(1) ≠ 1`
/// or the array has order 1.
pub fn strip_corner_array(perm: &Permutation) -> Option<Permutation> {
    if perm.at(1) != 1 || perm.order() < 2 {
        return None;
    }
    let values = perm.values()[1..].iter().map(|v| v - 1).collect();
    Some(Permutation::from_vec_unchecked(values))
}

/// Removes the three planes through a 1 at `(1, 1, 1)`.
pub fn strip_corner_cube(cube: &CostasCube) -> Option<CostasCube> {
    if cube.rows()[0] != (1, 1) || cube.order() < 2 {
        return None;
    }
    let rows = cube.rows()[1..]
        .iter()
        .map(|&(j, k)| (j - 1, k - 1))
        .collect();
    Some(CostasCube::from_rows_unchecked(rows))
}

/// One modulus per field size. Sweeps never range over moduli: different
/// moduli give isomorphic fields and the same canonical cubes.
#[derive(Clone, Debug)]
pub struct FieldCatalog {
    fields: BTreeMap<u32, FieldSpec>,
}

impl FieldCatalog {
    /// Every prime power in `4..=max_q` with its [`crate::gf::default_modulus`].
    pub fn up_to(max_q: u32) -> Result<Self> {
        let mut fields = BTreeMap::new();
        for q in 4..=max_q {
            if prime_power(q as u64).is_some() {
                fields.insert(q, FieldSpec::with_size(q as u64)?);
            }
        }
        Ok(FieldCatalog { fields })
    }

    /// Replaces the representation used for one field size.
    pub fn with_field(mut self, field: FieldSpec) -> Self {
        self.fields.insert(field.q(), field);
        self
    }

    pub fn get(&self, q: usize) -> Option<&FieldSpec> {
        u32::try_from(q).ok().and_then(|q| self.fields.get(&q))
    }
}

impl Default for FieldCatalog {
    fn default() -> Self {
        FieldCatalog::up_to(DEFAULT_MAX_SWEEP_ORDER as u32 + 3).expect("small fields")
    }
}

fn pairs_of(elements: &[FieldElement]) -> Vec<(FieldElement, FieldElement)> {
    elements
        .iter()
        .flat_map(|&a| elements.iter().map(move |&b| (a, b)))
        .collect()
}

/// Every cube a family produces for one field, over all admissible parameters.
pub fn family_cubes(family: CubeFamily, field: &FieldSpec) -> Result<Vec<CostasCube>> {
    if field.q() <= 3 {
        return Ok(Vec::new());
    }
    let prim = field.primitive_elements();
    match family {
        CubeFamily::G2x3 => {
            let mut tuples = Vec::with_capacity(prim.len().pow(3));
            for &a in &prim {
                for &b in &prim {
                    tuples.extend(prim.iter().map(|&c| (a, b, c)));
                }
            }
            tuples
                .into_par_iter()
                .map(|(a, b, c)| cube_g2x3(field, a, b, c))
                .collect()
        }
        CubeFamily::W2W2G2 => {
            if !field.is_prime_field() {
                return Ok(Vec::new());
            }
            let pairs = pairs_of(&prim);
            pairs
                .into_par_iter()
                .map(|(a, b)| cube_w2w2g2(field, a, b))
                .collect()
        }
        CubeFamily::G3I => field
            .g3_cube_admissible()
            .into_par_iter()
            .map(|phi| cube_g3_variant_i(field, phi))
            .collect(),
        CubeFamily::G3II => field
            .g3_cube_admissible()
            .into_par_iter()
            .map(|phi| cube_g3_variant_ii(field, phi))
            .collect(),
    }
}

/// Canonical classes of a family's cubes at one order; empty when the order
/// has no matching field in the catalog.
pub fn family_classes(
    family: CubeFamily,
    order: usize,
    fields: &FieldCatalog,
) -> Result<BTreeSet<CostasCube>> {
    let Some(field) = fields.get(family.field_size(order)) else {
        return Ok(BTreeSet::new());
    };
    let cubes = family_cubes(family, field)?;
    Ok(cubes
        .par_iter()
        .map(canonical_cube)
        .collect::<Vec<_>>()
        .into_iter()
        .collect())
}

/// Canonical cube classes of one family for every order `2..=max_order`
/// that the family reaches.
pub fn sweep(
    family: CubeFamily,
    max_order: usize,
    fields: &FieldCatalog,
) -> Result<BTreeMap<usize, BTreeSet<CostasCube>>> {
    if max_order > DEFAULT_MAX_SWEEP_ORDER {
        return Err(Error::OrderLimit {
            order: max_order,
            limit: DEFAULT_MAX_SWEEP_ORDER,
        });
    }
    let mut out = BTreeMap::new();
    for order in 2..=max_order {
        let classes = family_classes(family, order, fields)?;
        if !classes.is_empty() {
            out.insert(order, classes);
        }
    }
    Ok(out)
}

/// Per-order class counts of cubes obtained from the constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRow {
    pub order: usize,
    pub g2x3: usize,
    pub w2w2g2: usize,
    /// Both G3 variants pooled.
    pub g3: usize,
    pub g3_i: usize,
    pub g3_ii: usize,
    /// Classes reached by at least one construction.
    pub constructed: usize,
}

/// Construction counts for every order `2..=max_order` where some
/// construction applies.
pub fn construction_table(max_order: usize, fields: &FieldCatalog) -> Result<Vec<ConstructionRow>> {
    if max_order > DEFAULT_MAX_SWEEP_ORDER {
        return Err(Error::OrderLimit {
            order: max_order,
            limit: DEFAULT_MAX_SWEEP_ORDER,
        });
    }
    let mut rows = Vec::new();
    for order in 2..=max_order {
        let per: Vec<BTreeSet<CostasCube>> = CubeFamily::ALL
            .iter()
            .map(|&f| family_classes(f, order, fields))
            .collect::<Result<_>>()?;
        let g3: BTreeSet<_> = per[2].union(&per[3]).cloned().collect();
        let all: BTreeSet<_> = per.iter().flatten().cloned().collect();
        if all.is_empty() {
            continue;
        }
        rows.push(ConstructionRow {
            order,
            g2x3: per[0].len(),
            w2w2g2: per[1].len(),
            g3: g3.len(),
            g3_i: per[2].len(),
            g3_ii: per[3].len(),
            constructed: all.len(),
        });
    }
    Ok(rows)
}

/// Every W1/G2/W2/G3 array of one order over all parameter choices, keyed by
/// canonical form and labelled with the families that produce it.
pub fn catalog(
    order: usize,
    fields: &FieldCatalog,
) -> Result<BTreeMap<Permutation, BTreeSet<ArrayFamily>>> {
    let mut out: BTreeMap<Permutation, BTreeSet<ArrayFamily>> = BTreeMap::new();
    let mut add = |family: ArrayFamily, arrays: Vec<Permutation>| {
        for a in arrays {
            out.entry(canonical_array(&a)).or_default().insert(family);
        }
    };
    if let Some(f) = fields
        .get(order + 1)
        .filter(|f| f.is_prime_field() && f.p() > 2)
    {
        let p = f.p() as u64;
        let arrays = f
            .primitive_elements()
            .into_iter()
            .flat_map(|phi| (0..p).map(move |c| (phi, c)))
            .map(|(phi, c)| w1(f, phi, c))
            .collect::<Result<Vec<_>>>()?;
        add(ArrayFamily::W1, arrays);
    }
    if let Some(f) = fields.get(order + 2) {
        let prim = f.primitive_elements();
        let arrays = pairs_of(&prim)
            .into_iter()
            .map(|(a, b)| g2(f, a, b))
            .collect::<Result<Vec<_>>>()?;
        add(ArrayFamily::G2, arrays);
        if f.is_prime_field() {
            let arrays = prim.iter().map(|&a| w2(f, a)).collect::<Result<Vec<_>>>()?;
            add(ArrayFamily::W2, arrays);
        }
    }
    if let Some(f) = fields.get(order + 3) {
        let arrays = f
            .g3_admissible()
            .into_iter()
            .map(|a| g3(f, a))
            .collect::<Result<Vec<_>>>()?;
        add(ArrayFamily::G3, arrays);
    }
    Ok(out)
}
