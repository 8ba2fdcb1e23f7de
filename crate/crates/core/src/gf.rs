//! Arithmetic in GF(p^m).
//!
//! Elements are encoded as integers in `[0, q)` whose base-`p` digits are the
//! polynomial coefficients in ascending order, so `2 + 2x` in GF(27) is
//! `2 + 2*3 = 8`. Moduli are also written ascending: `[1, 0, 0, 1, 1]` is
//! `1 + x^3 + x^4`. Prime fields use the modulus `x`, which leaves constants
//! untouched and lets them share the extension-field code path.

use std::fmt;

use crate::error::{Error, Result};

/// Largest field size accepted anywhere in the crate.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const MAX_DEGREE: usize = 20;

type Digits = [u32; MAX_DEGREE];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn encoding(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    modulus: Vec<u32>,
    q: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, &r| acc / r * (r - 1))
}

/// `Some((p, m))` when `q = p^m` with `p` prime and `m ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut m = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        m += 1;
    }
    Some((p as u32, m))
}

/// Remainder of `num` modulo the monic polynomial `den` over GF(p); both
/// ascending. Returns `true` when the remainder is zero.
fn divides(num: &[u32], den: &[u32], p: u32) -> bool {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    for top in (dd..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        for (t, &dt) in den.iter().enumerate().take(dd + 1) {
            let idx = top - dd + t;
            rem[idx] = (rem[idx] + p - (c * dt) % p) % p;
        }
    }
    rem[..dd].iter().all(|&c| c == 0)
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut den = Vec::with_capacity(d + 1);
            let mut rest = low;
            for _ in 0..d {
                den.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            den.push(1);
            if divides(modulus, &den, p) {
                return false;
            }
        }
    }
    true
}

/// Modulus used when a field is named only by its size. These match the
/// representations used in the literature for q = 8, 16 and 27; for other
/// sizes the irreducible polynomial with the smallest encoding is used.
pub fn default_modulus(p: u32, m: u32) -> Result<Vec<u32>> {
    match (p, m) {
        (_, 1) => return Ok(vec![0, 1]),
        (2, 3) => return Ok(vec![1, 0, 1, 1]),
        (2, 4) => return Ok(vec![1, 0, 0, 1, 1]),
        (3, 3) => return Ok(vec![1, 0, 2, 1]),
        _ => {}
    }
    let q = (p as u64).pow(m);
    if q > MAX_FIELD_SIZE {
        return Err(Error::FieldTooLarge(q));
    }
    for low in 0..q {
        let mut poly = Vec::with_capacity(m as usize + 1);
        let mut rest = low;
        for _ in 0..m {
            poly.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        poly.push(1);
        if poly[0] != 0 && is_irreducible(&poly, p) {
            return Ok(poly);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Validates and normalizes a field description. For `m = 1` the modulus
    /// may be empty or any degree-1 polynomial; it is replaced by `x`.
    pub fn new(p: u32, m: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge((p as u64).saturating_pow(m)))?;
        let q = q as u32;

        let mut coeffs: Vec<u32> = modulus.iter().map(|&c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if m == 1 {
            if !coeffs.is_empty() && coeffs.len() != 2 {
                return Err(Error::ModulusDegree {
                    expected: 1,
                    got: coeffs.len().saturating_sub(1),
                });
            }
            return Ok(FieldSpec {
                p,
                m,
                modulus: vec![0, 1],
                q,
            });
        }
        if coeffs.len() != m as usize + 1 {
            return Err(Error::ModulusDegree {
                expected: m as usize,
                got: coeffs.len().saturating_sub(1),
            });
        }
        let lead = *coeffs.last().expect("nonempty");
        if lead != 1 {
            let inv = pow_mod(lead, p - 2, p);
            for c in coeffs.iter_mut() {
                *c = (*c * inv) % p;
            }
        }
        if !is_irreducible(&coeffs, p) {
            return Err(Error::ReducibleModulus { p });
        }
        Ok(FieldSpec {
            p,
            m,
            modulus: coeffs,
            q,
        })
    }

    pub fn prime(p: u32) -> Result<Self> {
        FieldSpec::new(p, 1, &[])
    }

    /// GF(q) with the [`default_modulus`].
    pub fn with_size(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::FieldSyntax {
            input: q.to_string(),
            reason: "not a prime power".into(),
        })?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q));
        }
        FieldSpec::new(p, m, &default_modulus(p, m)?)
    }

    /// Parses `"p^m:c0,c1,...,cm"`, `"p^m"` (default modulus), or a bare
    /// prime power such as `"13"`.
    pub fn parse(input: &str) -> Result<Self> {
        let syntax = |reason: &str| Error::FieldSyntax {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s = input.trim();
        let (head, modulus) = match s.split_once(':') {
            Some((h, tail)) => {
                let coeffs = tail
                    .split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| syntax("modulus coefficients must be non-negative integers"))?;
                (h.trim(), Some(coeffs))
            }
            None => (s, None),
        };
        let (p, m) = match head.split_once('^') {
            Some((p, m)) => (
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| syntax("bad characteristic"))?,
                m.trim().parse::<u32>().map_err(|_| syntax("bad degree"))?,
            ),
            None => {
                let q = head
                    .parse::<u64>()
                    .map_err(|_| syntax("expected p, q or p^m"))?;
                if q > MAX_FIELD_SIZE {
                    return Err(Error::FieldTooLarge(q));
                }
                prime_power(q).ok_or_else(|| syntax("not a prime power"))?
            }
        };
        match modulus {
            Some(coeffs) => FieldSpec::new(p, m, &coeffs),
            None => {
                if !is_prime(p as u64) {
                    return Err(Error::NotPrime(p as u64));
                }
                FieldSpec::new(p, m, &default_modulus(p, m)?)
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Ascending coefficients `c_0..c_m`, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.m == 1
    }

    pub fn element(&self, encoding: u64) -> Result<FieldElement> {
        if encoding >= self.q as u64 {
            return Err(Error::ElementOutOfRange {
                encoding,
                q: self.q,
            });
        }
        Ok(FieldElement(encoding as u32))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    /// Inverse of [`FieldSpec::from_int`] on the prime subfield.
    pub fn to_int(&self, e: FieldElement) -> Option<u32> {
        (e.0 < self.p).then_some(e.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(FieldElement)
    }

    fn decode(&self, e: FieldElement) -> Digits {
        let mut d = [0; MAX_DEGREE];
        let mut rest = e.0;
        for slot in d.iter_mut().take(self.m as usize) {
            *slot = rest % self.p;
            rest /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> FieldElement {
        let mut enc = 0;
        for &c in d[..self.m as usize].iter().rev() {
            enc = enc * self.p + c;
        }
        FieldElement(enc)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let mut z = [0; MAX_DEGREE];
        for t in 0..self.m as usize {
            z[t] = (x[t] + y[t]) % self.p;
        }
        self.encode(&z)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let x = self.decode(a);
        let mut z = [0; MAX_DEGREE];
        for t in 0..self.m as usize {
            z[t] = (self.p - x[t]) % self.p;
        }
        self.encode(&z)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let m = self.m as usize;
        if m == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        let (x, y) = (self.decode(a), self.decode(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for s in 0..m {
            if x[s] == 0 {
                continue;
            }
            for t in 0..m {
                prod[s + t] = (prod[s + t] + x[s] as u64 * y[t] as u64) % p;
            }
        }
        for top in (m..2 * m - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for t in 0..m {
                let idx = top - m + t;
                prod[idx] = (prod[idx] + p - (c * self.modulus[t] as u64) % p) % p;
            }
        }
        let digits: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.encode(&digits)
    }

    /// `a^exp`; negative exponents go through the inverse.
    pub fn pow(&self, a: FieldElement, exp: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match exp {
                0 => Ok(self.one()),
                e if e > 0 => Ok(self.zero()),
                _ => Err(Error::InverseOfZero),
            };
        }
        let mut e = exp.rem_euclid(self.q as i64 - 1) as u64;
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        self.pow(a, self.q as i64 - 2)
    }

    /// True iff `e` has multiplicative order `q - 1`.
    pub fn is_primitive(&self, e: FieldElement) -> Result<bool> {
        if e.0 == 0 {
            return Err(Error::NotPrimitive("0".into()));
        }
        let order = self.q as u64 - 1;
        for r in prime_factors(order) {
            if self.pow(e, (order / r) as i64)? == self.one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn primitive(&self, e: FieldElement) -> bool {
        e.0 != 0 && self.is_primitive(e).unwrap_or(false)
    }

    /// All primitive elements, ascending by encoding.
    pub fn primitive_elements(&self) -> Vec<FieldElement> {
        self.nonzero().filter(|&e| self.primitive(e)).collect()
    }

    /// Primitive `φ` with `1 - φ` also primitive.
    pub fn g3_admissible(&self) -> Vec<FieldElement> {
        self.primitive_elements()
            .into_iter()
            .filter(|&phi| self.primitive(self.sub(self.one(), phi)))
            .collect()
    }

    /// Primitive `φ` with both `1 - φ` and `1 - φ⁻¹` primitive.
    pub fn g3_cube_admissible(&self) -> Vec<FieldElement> {
        self.g3_admissible()
            .into_iter()
            .filter(|&phi| {
                let inv = self.inv(phi).expect("primitive elements are nonzero");
                self.primitive(self.sub(self.one(), inv))
            })
            .collect()
    }

    pub fn log_table(&self, generator: FieldElement) -> Result<LogTable> {
        LogTable::new(self, generator)
    }

    /// Parses an integer encoding, or a polynomial in `x` such as `1+2x^2`
    /// or `x+x^2` (anything containing `x` is read as a polynomial).
    pub fn parse_element(&self, input: &str) -> Result<FieldElement> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |reason: &str| Error::ElementSyntax {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if s.is_empty() {
            return Err(bad("empty"));
        }
        if !s.contains('x') {
            let enc = s
                .parse::<u64>()
                .map_err(|_| bad("expected an integer or a polynomial in x"))?;
            return self.element(enc);
        }
        let p = self.p as i64;
        let mut coeffs = vec![0i64; self.m as usize];
        let normalized = s.replace('-', "+-");
        for term in normalized.split('+').filter(|t| !t.is_empty()) {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term),
            };
            let (coef, power) = match body.split_once('x') {
                None => (
                    body.parse::<i64>().map_err(|_| bad("bad constant term"))?,
                    0usize,
                ),
                Some((c, e)) => {
                    let c = c.trim_end_matches('*');
                    let coef = if c.is_empty() {
                        1
                    } else {
                        c.parse::<i64>().map_err(|_| bad("bad coefficient"))?
                    };
                    let power = if e.is_empty() {
                        1
                    } else {
                        e.strip_prefix('^')
                            .ok_or_else(|| bad("expected ^ after x"))?
                            .parse::<usize>()
                            .map_err(|_| bad("bad exponent"))?
                    };
                    (coef, power)
                }
            };
            if power >= self.m as usize {
                return Err(bad("degree must be below the extension degree"));
            }
            coeffs[power] = (coeffs[power] + sign * coef).rem_euclid(p);
        }
        let digits: Vec<u32> = coeffs.into_iter().map(|c| c as u32).collect();
        Ok(self.encode(&digits))
    }

    /// Ascending polynomial notation, e.g. `2+2x` or `1+x^2+x^3`.
    pub fn format_element(&self, e: FieldElement) -> String {
        let d = self.decode(e);
        let mut terms = Vec::new();
        for (power, &c) in d.iter().enumerate().take(self.m as usize) {
            if c == 0 {
                continue;
            }
            let term = match (power, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (k, 1) => format!("x^{k}"),
                (k, c) => format!("{c}x^{k}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            return write!(f, "{}", self.p);
        }
        write!(f, "{}^{}:", self.p, self.m)?;
        let coeffs: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
        f.write_str(&coeffs.join(","))
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let (mut acc, mut b) = (1u64, base as u64 % p as u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Powers of a primitive element and their inverse map.
#[derive(Clone, Debug)]
pub struct LogTable {
    generator: FieldElement,
    /// `exp[i - 1] = generator^i` for `1 ≤ i ≤ q - 1`.
    exp: Vec<FieldElement>,
    /// `log[e] ∈ [1, q - 1]` for nonzero `e`; `log[0]` is unused.
    log: Vec<u32>,
}

impl LogTable {
    pub fn new(field: &FieldSpec, generator: FieldElement) -> Result<Self> {
        if !field.primitive(generator) {
            return Err(Error::NotPrimitive(field.format_element(generator)));
        }
        let order = field.q() as usize - 1;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0; field.q() as usize];
        let mut acc = field.one();
        for i in 1..=order {
            acc = field.mul(acc, generator);
            exp.push(acc);
            log[acc.0 as usize] = i as u32;
        }
        Ok(LogTable {
            generator,
            exp,
            log,
        })
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// The exponent `i ∈ [1, q - 1]` with `generator^i = e`.
    pub fn dlog(&self, e: FieldElement) -> Result<u32> {
        if e.0 == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[e.0 as usize])
    }

    /// `generator^i` for any integer `i`.
    pub fn power(&self, i: i64) -> FieldElement {
        let order = self.exp.len() as i64;
        let r = (i - 1).rem_euclid(order);
        self.exp[r as usize]
    }
}
