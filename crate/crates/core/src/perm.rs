//! Permutations and the permutation arrays they encode.
//!
//! A permutation `σ` of `{1..n}` stands for the `n x n` array with
//! `s[i][j] = 1` exactly when `σ(j) = i`. Everything here is 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        let mut seen = vec![false; n + 1];
        for (idx, &v) in values.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::ValueOutOfRange {
                    position: idx + 1,
                    value: v,
                    order: n,
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::RepeatedValue { value: v });
            }
        }
        Ok(Permutation { values })
    }

    /// Caller guarantees `values` is a bijection on `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "identity permutation of order 0");
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// `σ(1), σ(2), ..., σ(n)`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `σ(j)` for `j` in `1..=n`.
    pub fn at(&self, j: usize) -> usize {
        self.values[j - 1]
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            values: inverse_values(&self.values),
        }
    }

    /// `self ∘ other`, i.e. `j ↦ self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(Permutation {
            values: other.values.iter().map(|&j| self.at(j)).collect(),
        })
    }

    /// Cells `(i, j)` holding a 1, in column order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.values.iter().enumerate().map(|(j, &i)| (i, j + 1))
    }

    /// True iff the difference vectors `(j' - j, σ(j') - σ(j))` over all
    /// `j < j'` are pairwise distinct.
    pub fn is_costas(&self) -> bool {
        is_costas_values(&self.values)
    }

    /// First difference vector `(Δj, Δi)` that occurs twice, scanning column
    /// distances in increasing order. `None` iff the array is Costas.
    pub fn repeated_vector(&self) -> Option<(usize, isize)> {
        let v = &self.values;
        let n = v.len();
        let mut seen = vec![false; 2 * n];
        for d in 1..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n - d {
                let diff = v[j + d] as isize - v[j] as isize;
                let slot = (diff + n as isize) as usize;
                if std::mem::replace(&mut seen[slot], true) {
                    return Some((d, diff));
                }
            }
        }
        None
    }

    /// Maximum over nonzero shifts `(u, v)` of the number of cells `(i, j)`
    /// with `s[i][j] = s[i+u][j+v] = 1`.
    ///
    /// Computed by sliding the array over itself, independently of the
    /// difference-vector test in [`Permutation::is_costas`].
    pub fn max_offphase_autocorrelation(&self) -> usize {
        let n = self.order() as isize;
        let mut best = 0;
        for v in -(n - 1)..n {
            for u in -(n - 1)..n {
                if u == 0 && v == 0 {
                    continue;
                }
                let count = (1..=n)
                    .filter(|&j| {
                        let shifted = j + v;
                        (1..=n).contains(&shifted)
                            && self.at(j as usize) as isize + u
                                == self.at(shifted as usize) as isize
                    })
                    .count();
                best = best.max(count);
            }
        }
        best
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, v) in self.values.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn inverse_values(values: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; values.len()];
    for (j, &i) in values.iter().enumerate() {
        inv[i - 1] = j + 1;
    }
    inv
}

/// Costas test on a raw 1-based value slice that is already known to be a
/// permutation. Vectors with different column distances never collide, so
/// each distance is checked on its own.
pub(crate) fn is_costas_values(values: &[usize]) -> bool {
    let n = values.len();
    if n <= 64 {
        for d in 1..n {
            let mut seen: u128 = 0;
            for j in 0..n - d {
                let bit = 1u128 << (values[j + d] + n - values[j]);
                if seen & bit != 0 {
                    return false;
                }
                seen |= bit;
            }
        }
        true
    } else {
        let mut seen = vec![false; 2 * n];
        for d in 1..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n - d {
                let slot = values[j + d] + n - values[j];
                if std::mem::replace(&mut seen[slot], true) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(Permutation::new(vec![]), Err(Error::EmptyPermutation));
        assert_eq!(
            Permutation::new(vec![1, 1, 2]),
            Err(Error::RepeatedValue { value: 1 })
        );
        assert!(matches!(
            Permutation::new(vec![1, 4, 2]),
            Err(Error::ValueOutOfRange { value: 4, .. })
        ));
        assert!(matches!(
            Permutation::new(vec![0, 1]),
            Err(Error::ValueOutOfRange { value: 0, .. })
        ));
    }

    #[test]
    fn autocorrelation_examples() {
        assert_eq!(p(&[1]).max_offphase_autocorrelation(), 0);
        assert_eq!(p(&[3, 5, 4, 2, 6, 1]).max_offphase_autocorrelation(), 1);
        assert_eq!(p(&[1, 2, 3]).max_offphase_autocorrelation(), 2);
    }

    #[test]
    fn costas_examples() {
        assert!(p(&[2, 1]).is_costas());
        assert!(p(&[1]).is_costas());
        assert!(p(&[2, 4, 5, 1, 6, 3]).is_costas());
        assert!(!p(&[1, 2, 3, 4]).is_costas());
        assert_eq!(p(&[1, 2, 3, 4]).repeated_vector(), Some((1, 1)));
        assert_eq!(p(&[2, 4, 5, 1, 6, 3]).repeated_vector(), None);
    }

    #[test]
    fn large_order_path_agrees() {
        // order > 64 takes the vector-of-flags branch
        let id = Permutation::identity(70);
        assert!(!id.is_costas());
        let mut v: Vec<usize> = (1..=70).collect();
        v.swap(0, 1);
        assert!(!is_costas_values(&v));
    }

    #[test]
    fn inverse_and_compose() {
        let a = p(&[3, 5, 4, 2, 6, 1]);
        let inv = a.inverse();
        assert_eq!(inv.values(), &[6, 4, 1, 3, 2, 5]);
        assert_eq!(a.compose(&inv).unwrap(), Permutation::identity(6));
        assert!(a.compose(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, 1, 3]).to_string(), "(2,1,3)");
    }
}
