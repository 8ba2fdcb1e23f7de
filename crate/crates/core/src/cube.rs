//! Permutation cubes, their projections, and reconstruction from two projections.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{inverse_values, is_costas_values, Permutation};

/// An order-`n` permutation cube, stored sparsely: row `i` holds the unique
/// `(j, k)` with `d[i][j][k] = 1`.
///
/// Construction only enforces the permutation-cube property. Whether the
/// cube is Costas is answered by [`CostasCube::is_costas_cube`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CostasCube {
    rows: Vec<(usize, usize)>,
}

/// Projections of a cube as permutations, under the fixed conventions
/// `σ_A(j) = i`, `σ_B(k) = i`, `σ_C(k) = j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionTriple {
    pub a: Permutation,
    pub b: Permutation,
    pub c: Permutation,
}

/// Which two projections are supplied to [`cube_from_pair`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjectionPair {
    AB,
    AC,
    BC,
}

impl CostasCube {
    /// `rows[i - 1] = (j_i, k_i)`.
    pub fn new(rows: Vec<(usize, usize)>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        let mut seen_j = vec![false; n + 1];
        let mut seen_k = vec![false; n + 1];
        for (idx, &(j, k)) in rows.iter().enumerate() {
            for (component, value, seen) in [('j', j, &mut seen_j), ('k', k, &mut seen_k)] {
                if value == 0 || value > n {
                    return Err(Error::CubeEntryOutOfRange {
                        row: idx + 1,
                        component,
                        value,
                        order: n,
                    });
                }
                if std::mem::replace(&mut seen[value], true) {
                    return Err(Error::DuplicateCoordinate { component, value });
                }
            }
        }
        Ok(CostasCube { rows })
    }

    /// Builds a cube from its list of 1-entries `(i, j, k)` in any order.
    pub fn from_triples(triples: &[[usize; 3]]) -> Result<Self> {
        let n = triples.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        let mut rows: Vec<Option<(usize, usize)>> = vec![None; n];
        for &[i, j, k] in triples {
            if i == 0 || i > n {
                return Err(Error::CubeEntryOutOfRange {
                    row: i,
                    component: 'i',
                    value: i,
                    order: n,
                });
            }
            if rows[i - 1].replace((j, k)).is_some() {
                return Err(Error::DuplicateRow { row: i });
            }
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(idx, r)| r.ok_or(Error::MissingRow { row: idx + 1 }))
            .collect::<Result<Vec<_>>>()?;
        CostasCube::new(rows)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<(usize, usize)>) -> Self {
        debug_assert!(CostasCube::new(rows.clone()).is_ok());
        CostasCube { rows }
    }

    /// The cube with 1s at `(i, i, i)`.
    pub fn diagonal(n: usize) -> Self {
        CostasCube {
            rows: (1..=n).map(|i| (i, i)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[(usize, usize)] {
        &self.rows
    }

    /// 1-entries sorted by `i`.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        self.rows
            .iter()
            .enumerate()
            .map(|(idx, &(j, k))| [idx + 1, j, k])
            .collect()
    }

    pub fn j_values(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }

    pub fn k_values(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.1).collect()
    }

    pub fn projections(&self) -> ProjectionTriple {
        let js = self.j_values();
        let ks = self.k_values();
        let n = self.order();
        let mut c = vec![0; n];
        for &(j, k) in &self.rows {
            c[k - 1] = j;
        }
        ProjectionTriple {
            a: Permutation::from_vec_unchecked(inverse_values(&js)),
            b: Permutation::from_vec_unchecked(inverse_values(&ks)),
            c: Permutation::from_vec_unchecked(c),
        }
    }

    pub fn is_costas_cube(&self) -> bool {
        let ProjectionTriple { a, b, c } = self.projections();
        is_costas_values(a.values()) && is_costas_values(b.values()) && is_costas_values(c.values())
    }
}

impl fmt::Display for CostasCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, &(j, k)) in self.rows.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{j},{k})", idx + 1)?;
        }
        f.write_str("}")
    }
}

fn check_orders(x: &Permutation, y: &Permutation) -> Result<()> {
    if x.order() != y.order() {
        return Err(Error::OrderMismatch {
            left: x.order(),
            right: y.order(),
        });
    }
    Ok(())
}

/// The unique permutation cube with Projection A equal to `a` and
/// Projection B equal to `b`: `j_i = σ_A⁻¹(i)`, `k_i = σ_B⁻¹(i)`.
pub fn cube_from_projections(a: &Permutation, b: &Permutation) -> Result<CostasCube> {
    check_orders(a, b)?;
    let js = inverse_values(a.values());
    let ks = inverse_values(b.values());
    Ok(CostasCube::from_rows_unchecked(
        js.into_iter().zip(ks).collect(),
    ))
}

/// Reconstructs a cube from any two of its projections.
pub fn cube_from_pair(
    which: ProjectionPair,
    x: &Permutation,
    y: &Permutation,
) -> Result<CostasCube> {
    check_orders(x, y)?;
    match which {
        ProjectionPair::AB => cube_from_projections(x, y),
        ProjectionPair::AC => {
            // σ_A(j) = i gives j_i; σ_C(k) = j, so k = σ_C⁻¹(j_i).
            let js = inverse_values(x.values());
            let c_inv = inverse_values(y.values());
            let rows = js.into_iter().map(|j| (j, c_inv[j - 1])).collect();
            Ok(CostasCube::from_rows_unchecked(rows))
        }
        ProjectionPair::BC => {
            // σ_B(k) = i gives k_i; then j_i = σ_C(k_i).
            let ks = inverse_values(x.values());
            let rows = ks.into_iter().map(|k| (y.at(k), k)).collect();
            Ok(CostasCube::from_rows_unchecked(rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn intro_cube() -> CostasCube {
        CostasCube::from_triples(&[
            [1, 6, 4],
            [2, 4, 6],
            [3, 1, 2],
            [4, 3, 1],
            [5, 2, 5],
            [6, 5, 3],
        ])
        .unwrap()
    }

    #[test]
    fn projections_of_order_six_example() {
        let t = intro_cube().projections();
        assert_eq!(t.a, p(&[3, 5, 4, 2, 6, 1]));
        assert_eq!(t.b, p(&[4, 3, 6, 1, 5, 2]));
        assert_eq!(t.c, p(&[3, 1, 5, 6, 2, 4]));
        assert!(intro_cube().is_costas_cube());
    }

    #[test]
    fn order_one() {
        let cube = CostasCube::from_triples(&[[1, 1, 1]]).unwrap();
        let t = cube.projections();
        assert_eq!(t.a, Permutation::identity(1));
        assert_eq!(t.b, Permutation::identity(1));
        assert_eq!(t.c, Permutation::identity(1));
        assert!(cube.is_costas_cube());
    }

    #[test]
    fn reconstruction() {
        let a = p(&[3, 5, 4, 2, 6, 1]);
        let b = p(&[4, 3, 6, 1, 5, 2]);
        let c = p(&[3, 1, 5, 6, 2, 4]);
        assert_eq!(cube_from_projections(&a, &b).unwrap(), intro_cube());
        assert_eq!(
            cube_from_pair(ProjectionPair::AB, &a, &b).unwrap(),
            intro_cube()
        );
        assert_eq!(
            cube_from_pair(ProjectionPair::AC, &a, &c).unwrap(),
            intro_cube()
        );
        assert_eq!(
            cube_from_pair(ProjectionPair::BC, &b, &c).unwrap(),
            intro_cube()
        );

        let id = Permutation::identity(5);
        let diag = cube_from_projections(&id, &id).unwrap();
        assert_eq!(diag, CostasCube::diagonal(5));
        assert_eq!(diag.projections().c, id);
        assert_eq!(cube_from_pair(ProjectionPair::BC, &id, &id).unwrap(), diag);
    }

    #[test]
    fn order_mismatch() {
        let err = cube_from_projections(&Permutation::identity(3), &Permutation::identity(4));
        assert_eq!(err, Err(Error::OrderMismatch { left: 3, right: 4 }));
        assert!(cube_from_pair(
            ProjectionPair::AC,
            &Permutation::identity(2),
            &Permutation::identity(1)
        )
        .is_err());
    }

    #[test]
    fn diagonal_is_not_costas() {
        assert!(!CostasCube::diagonal(4).is_costas_cube());
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            CostasCube::from_triples(&[[1, 1, 1], [1, 2, 2]]),
            Err(Error::DuplicateRow { row: 1 })
        );
        assert_eq!(
            CostasCube::from_triples(&[[1, 1, 1], [2, 1, 2]]),
            Err(Error::DuplicateCoordinate {
                component: 'j',
                value: 1
            })
        );
        assert_eq!(
            CostasCube::new(vec![(1, 2), (2, 2)]),
            Err(Error::DuplicateCoordinate {
                component: 'k',
                value: 2
            })
        );
        assert!(matches!(
            CostasCube::from_triples(&[[1, 1, 1], [2, 3, 2]]),
            Err(Error::CubeEntryOutOfRange { component: 'j', .. })
        ));
    }
}
