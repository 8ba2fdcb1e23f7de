//! Exhaustive generation of Costas arrays by backtracking, and of Costas
//! cubes by joining every ordered pair of arrays as Projections A and B.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube::CostasCube;
use crate::error::{Error, Result};
use crate::perm::{inverse_values, is_costas_values, Permutation};
use crate::symmetry::{array_orbit, canonical_array, canonical_cube, SymmetryElement};

/// Largest order enumerated in-process unless the caller raises it.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 13;

struct Search {
    n: usize,
    values: Vec<usize>,
    used: u64,
    /// Bit `Δi + n` of `seen[d]` is set once vector `(d, Δi)` is present.
    seen: Vec<u128>,
}

impl Search {
    fn new(n: usize) -> Self {
        Search {
            n,
            values: Vec::with_capacity(n),
            used: 0,
            seen: vec![0; n],
        }
    }

    /// Appends `v` if it creates no repeated vector.
    fn push(&mut self, v: usize) -> bool {
        let col = self.values.len();
        let n = self.n;
        for (offset, &earlier) in self.values.iter().rev().enumerate() {
            let bit = 1u128 << (v + n - earlier);
            if self.seen[offset + 1] & bit != 0 {
                // roll back the distances already marked
                for (undo, &e) in self.values.iter().rev().enumerate().take(offset) {
                    self.seen[undo + 1] &= !(1u128 << (v + n - e));
                }
                return false;
            }
            self.seen[offset + 1] |= bit;
        }
        debug_assert_eq!(col, self.values.len());
        self.values.push(v);
        self.used |= 1 << v;
        true
    }

    fn pop(&mut self) {
        let v = self.values.pop().expect("nonempty");
        self.used &= !(1 << v);
        let n = self.n;
        for (offset, &earlier) in self.values.iter().rev().enumerate() {
            self.seen[offset + 1] &= !(1u128 << (v + n - earlier));
        }
    }

    fn run(&mut self, out: &mut Vec<Permutation>) {
        if self.values.len() == self.n {
            out.push(Permutation::from_vec_unchecked(self.values.clone()));
            return;
        }
        for v in 1..=self.n {
            if self.used & (1 << v) == 0 && self.push(v) {
                self.run(out);
                self.pop();
            }
        }
    }
}

/// All Costas permutations of order `n`, in lexicographic order.
pub fn enumerate_costas_arrays(n: usize) -> Result<Vec<Permutation>> {
    enumerate_costas_arrays_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_costas_arrays_with_limit(n: usize, limit: usize) -> Result<Vec<Permutation>> {
    if n > limit || n > 62 {
        return Err(Error::OrderLimit { order: n, limit });
    }
    if n == 0 {
        return Err(Error::EmptyPermutation);
    }
    let chunks: Vec<Vec<Permutation>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut search = Search::new(n);
            let mut out = Vec::new();
            search.push(first);
            search.run(&mut out);
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// One canonical representative per dihedral class, sorted.
pub fn classes_of(arrays: &[Permutation]) -> Vec<Permutation> {
    let set: BTreeSet<Permutation> = arrays
        .par_iter()
        .map(canonical_array)
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    set.into_iter().collect()
}

pub fn enumerate_costas_classes(n: usize) -> Result<Vec<Permutation>> {
    Ok(classes_of(&enumerate_costas_arrays(n)?))
}

/// Full dihedral orbits of the given arrays, deduplicated and sorted.
pub fn expand_orbits(arrays: &[Permutation]) -> Vec<Permutation> {
    let set: BTreeSet<Permutation> = arrays.iter().flat_map(array_orbit).collect();
    set.into_iter().collect()
}

/// Checks that `arrays` could be the complete list of Costas arrays of
/// order `n`: every entry has order `n`, is Costas, occurs once, and the
/// list is closed under the dihedral group.
pub fn validate_array_set(arrays: &[Permutation], n: usize) -> Result<()> {
    let mut seen = HashSet::with_capacity(arrays.len());
    for (idx, a) in arrays.iter().enumerate() {
        if a.order() != n {
            return Err(Error::IncompleteArraySet(format!(
                "entry {} has order {}, expected {n}",
                idx + 1,
                a.order()
            )));
        }
        if !a.is_costas() {
            return Err(Error::IncompleteArraySet(format!(
                "entry {} {a} is not Costas",
                idx + 1
            )));
        }
        if !seen.insert(a) {
            return Err(Error::IncompleteArraySet(format!(
                "entry {} {a} is repeated",
                idx + 1
            )));
        }
    }
    let orbit_total: usize = classes_of(arrays)
        .iter()
        .map(|c| array_orbit(c).len())
        .sum();
    if orbit_total != arrays.len() {
        return Err(Error::IncompleteArraySet(format!(
            "{} arrays do not split into whole dihedral orbits (orbits cover {orbit_total})",
            arrays.len()
        )));
    }
    Ok(())
}

/// How the pair-join chooses Projection A.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum JoinMode {
    /// Every ordered pair `(A, B)` of arrays.
    #[default]
    AllPairs,
    /// `A` ranges over one representative per dihedral class only. Every
    /// cube class still appears, because the 16 cube symmetries that keep
    /// the `k` axis in place act on Projection A as the full dihedral group.
    ClassReduced,
}

/// Canonical representatives of every Costas cube class whose projections
/// come from `arrays`, which must be the complete set of Costas arrays of
/// order `n`.
pub fn enumerate_costas_cubes(
    n: usize,
    arrays: &[Permutation],
    mode: JoinMode,
) -> Result<Vec<CostasCube>> {
    validate_array_set(arrays, n)?;
    let inverses: Vec<Vec<usize>> = arrays.iter().map(|a| inverse_values(a.values())).collect();
    let outer: Vec<usize> = match mode {
        JoinMode::AllPairs => (0..arrays.len()).collect(),
        JoinMode::ClassReduced => {
            let reps: HashSet<Permutation> = classes_of(arrays).into_iter().collect();
            (0..arrays.len())
                .filter(|&idx| reps.contains(&arrays[idx]))
                .collect()
        }
    };
    let found: Vec<HashSet<CostasCube>> = outer
        .par_iter()
        .map(|&ai| {
            let a_inv = &inverses[ai];
            let mut local = HashSet::new();
            let mut c = vec![0usize; n];
            for (bi, b) in arrays.iter().enumerate() {
                // σ_C(k) = σ_A⁻¹(σ_B(k))
                for (slot, &bk) in c.iter_mut().zip(b.values()) {
                    *slot = a_inv[bk - 1];
                }
                if is_costas_values(&c) {
                    let rows = a_inv
                        .iter()
                        .copied()
                        .zip(inverses[bi].iter().copied())
                        .collect();
                    local.insert(canonical_cube(&CostasCube::from_rows_unchecked(rows)));
                }
            }
            local
        })
        .collect();
    let merged: BTreeSet<CostasCube> = found.into_iter().flatten().collect();
    Ok(merged.into_iter().collect())
}

/// Number of dihedral classes of arrays that occur as a projection of one
/// of the given cubes.
pub fn projection_class_count(cubes: &[CostasCube]) -> usize {
    projection_classes(cubes).len()
}

/// Canonical forms of every array occurring as a projection of the cubes.
pub fn projection_classes(cubes: &[CostasCube]) -> BTreeSet<Permutation> {
    let symmetries = SymmetryElement::all();
    cubes
        .par_iter()
        .flat_map_iter(|cube| {
            symmetries
                .iter()
                .map(|s| canonical_array(&s.apply(cube).projections().a))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// One row of the cube/projection/array class census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub order: usize,
    pub cube_classes: usize,
    pub projection_array_classes: usize,
    pub total_array_classes: usize,
    #[serde(skip)]
    pub representatives: Vec<CostasCube>,
}

/// Census for one order from a complete array list.
pub fn class_report(n: usize, arrays: &[Permutation], mode: JoinMode) -> Result<ClassReport> {
    let cubes = enumerate_costas_cubes(n, arrays, mode)?;
    Ok(ClassReport {
        order: n,
        cube_classes: cubes.len(),
        projection_array_classes: projection_class_count(&cubes),
        total_array_classes: classes_of(arrays).len(),
        representatives: cubes,
    })
}

/// Census rows for orders `2..=max_n`, enumerating arrays in-process.
pub fn table1(max_n: usize) -> Result<Vec<ClassReport>> {
    (2..=max_n)
        .map(|n| class_report(n, &enumerate_costas_arrays(n)?, JoinMode::AllPairs))
        .collect()
}
