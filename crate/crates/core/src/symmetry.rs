//! Symmetry groups acting on arrays (the dihedral group of the square) and on
//! cubes (the order-48 group of the cube), canonical forms, orbits, and the
//! projection set `S(D)` of a Costas cube.
//!
//! Both groups are realized as signed permutations of coordinate axes. An
//! element sends a point `x` to `y` with `y[a] = x[axis_perm[a]]`, reversed
//! (`v ↦ n + 1 - v`) when `flips[a]` is set.

use std::collections::BTreeSet;

use crate::cube::CostasCube;
use crate::error::{Error, Result};
use crate::perm::Permutation;

const AXIS_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[inline]
fn reflect(v: usize, n: usize, flip: bool) -> usize {
    if flip {
        n + 1 - v
    } else {
        v
    }
}

/// An element of the symmetry group of the cube, acting on `(i, j, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetryElement {
    pub axis_perm: [usize; 3],
    pub flips: [bool; 3],
}

impl SymmetryElement {
    pub const IDENTITY: SymmetryElement = SymmetryElement {
        axis_perm: [0, 1, 2],
        flips: [false; 3],
    };

    /// All 48 elements, identity first.
    pub fn all() -> Vec<SymmetryElement> {
        let mut out = Vec::with_capacity(48);
        for axis_perm in AXIS_PERMS {
            for mask in 0..8u8 {
                out.push(SymmetryElement {
                    axis_perm,
                    flips: [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0],
                });
            }
        }
        out
    }

    /// The 24 orientation-preserving elements.
    pub fn rotations() -> Vec<SymmetryElement> {
        Self::all()
            .into_iter()
            .filter(|s| s.is_rotation())
            .collect()
    }

    /// Exchanges two axes (0 = i, 1 = j, 2 = k).
    pub fn swap_axes(a: usize, b: usize) -> SymmetryElement {
        let mut axis_perm = [0, 1, 2];
        axis_perm.swap(a, b);
        SymmetryElement {
            axis_perm,
            flips: [false; 3],
        }
    }

    /// Reverses one axis.
    pub fn flip(axis: usize) -> SymmetryElement {
        let mut flips = [false; 3];
        flips[axis] = true;
        SymmetryElement {
            axis_perm: [0, 1, 2],
            flips,
        }
    }

    /// Determinant of the signed permutation matrix is `+1`.
    pub fn is_rotation(&self) -> bool {
        let p = self.axis_perm;
        let inversions = (0..3)
            .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
            .filter(|&(a, b)| p[a] > p[b])
            .count();
        let flips = self.flips.iter().filter(|&&f| f).count();
        (inversions + flips) % 2 == 0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SymmetryElement) -> SymmetryElement {
        let mut axis_perm = [0; 3];
        let mut flips = [false; 3];
        for b in 0..3 {
            let via = self.axis_perm[b];
            axis_perm[b] = other.axis_perm[via];
            flips[b] = self.flips[b] ^ other.flips[via];
        }
        SymmetryElement { axis_perm, flips }
    }

    pub fn inverse(&self) -> SymmetryElement {
        let mut axis_perm = [0; 3];
        let mut flips = [false; 3];
        for a in 0..3 {
            axis_perm[self.axis_perm[a]] = a;
            flips[self.axis_perm[a]] = self.flips[a];
        }
        SymmetryElement { axis_perm, flips }
    }

    pub fn apply_point(&self, point: [usize; 3], n: usize) -> [usize; 3] {
        let mut out = [0; 3];
        for a in 0..3 {
            out[a] = reflect(point[self.axis_perm[a]], n, self.flips[a]);
        }
        out
    }

    pub fn apply(&self, cube: &CostasCube) -> CostasCube {
        let n = cube.order();
        let mut rows = vec![(0, 0); n];
        for (idx, &(j, k)) in cube.rows().iter().enumerate() {
            let [i2, j2, k2] = self.apply_point([idx + 1, j, k], n);
            rows[i2 - 1] = (j2, k2);
        }
        CostasCube::from_rows_unchecked(rows)
    }
}

/// An element of the dihedral group of the square, acting on the `(i, j)`
/// cells of a permutation array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanarSymmetry {
    pub transpose: bool,
    pub flips: [bool; 2],
}

impl PlanarSymmetry {
    pub const IDENTITY: PlanarSymmetry = PlanarSymmetry {
        transpose: false,
        flips: [false, false],
    };
    /// `i ↦ n + 1 - i`: mirror image left to right when `i` runs horizontally.
    pub const REFLECT_VERTICAL: PlanarSymmetry = PlanarSymmetry {
        transpose: false,
        flips: [true, false],
    };
    /// `j ↦ n + 1 - j`.
    pub const REFLECT_HORIZONTAL: PlanarSymmetry = PlanarSymmetry {
        transpose: false,
        flips: [false, true],
    };
    pub const ROTATE_180: PlanarSymmetry = PlanarSymmetry {
        transpose: false,
        flips: [true, true],
    };
    /// Reflection in the main diagonal (inverse permutation).
    pub const TRANSPOSE: PlanarSymmetry = PlanarSymmetry {
        transpose: true,
        flips: [false, false],
    };
    /// Reflection in the anti-diagonal.
    pub const ANTI_TRANSPOSE: PlanarSymmetry = PlanarSymmetry {
        transpose: true,
        flips: [true, true],
    };

    pub fn all() -> [PlanarSymmetry; 8] {
        let mut out = [PlanarSymmetry::IDENTITY; 8];
        for (idx, slot) in out.iter_mut().enumerate() {
            *slot = PlanarSymmetry {
                transpose: idx & 4 != 0,
                flips: [idx & 1 != 0, idx & 2 != 0],
            };
        }
        out
    }

    pub fn compose(&self, other: &PlanarSymmetry) -> PlanarSymmetry {
        // y[a] = x[a ^ t], flipped by f[a]
        let via = |a: usize| if self.transpose { 1 - a } else { a };
        PlanarSymmetry {
            transpose: self.transpose ^ other.transpose,
            flips: [
                self.flips[0] ^ other.flips[via(0)],
                self.flips[1] ^ other.flips[via(1)],
            ],
        }
    }

    pub fn apply_point(&self, (i, j): (usize, usize), n: usize) -> (usize, usize) {
        let (a, b) = if self.transpose { (j, i) } else { (i, j) };
        (reflect(a, n, self.flips[0]), reflect(b, n, self.flips[1]))
    }

    pub fn apply(&self, perm: &Permutation) -> Permutation {
        let n = perm.order();
        let mut values = vec![0; n];
        for cell in perm.ones() {
            let (i, j) = self.apply_point(cell, n);
            values[j - 1] = i;
        }
        Permutation::from_vec_unchecked(values)
    }
}

pub fn apply_planar(sym: PlanarSymmetry, perm: &Permutation) -> Permutation {
    sym.apply(perm)
}

pub fn apply_cube(sym: SymmetryElement, cube: &CostasCube) -> CostasCube {
    sym.apply(cube)
}

/// Deduplicated images of `perm` under the dihedral group, sorted.
pub fn array_orbit(perm: &Permutation) -> Vec<Permutation> {
    let set: BTreeSet<Permutation> = PlanarSymmetry::all()
        .iter()
        .map(|s| s.apply(perm))
        .collect();
    set.into_iter().collect()
}

/// Lexicographically least value sequence in the dihedral orbit.
pub fn canonical_array(perm: &Permutation) -> Permutation {
    PlanarSymmetry::all()
        .iter()
        .map(|s| s.apply(perm))
        .min()
        .expect("group is nonempty")
}

/// Size of the dihedral orbit. For order > 2 this is 4 when some diagonal
/// reflection fixes the array and 8 otherwise; orders 1 and 2 give the
/// literal orbit sizes 1 and 2.
pub fn array_class_size(perm: &Permutation) -> usize {
    array_orbit(perm).len()
}

/// Whether the array is fixed by reflection in either diagonal.
pub fn has_diagonal_symmetry(perm: &Permutation) -> bool {
    [PlanarSymmetry::TRANSPOSE, PlanarSymmetry::ANTI_TRANSPOSE]
        .iter()
        .any(|s| &s.apply(perm) == perm)
}

/// Deduplicated images of `cube` under all 48 symmetries, sorted.
pub fn cube_orbit(cube: &CostasCube) -> Vec<CostasCube> {
    let set: BTreeSet<CostasCube> = SymmetryElement::all()
        .iter()
        .map(|s| s.apply(cube))
        .collect();
    set.into_iter().collect()
}

/// Lexicographically least triple list (sorted by `i`) in the orbit.
pub fn canonical_cube(cube: &CostasCube) -> CostasCube {
    SymmetryElement::all()
        .iter()
        .map(|s| s.apply(cube))
        .min()
        .expect("group is nonempty")
}

fn projection_a_set(cube: &CostasCube, group: &[SymmetryElement]) -> Result<BTreeSet<Permutation>> {
    if !cube.is_costas_cube() {
        return Err(Error::NotCostasCube);
    }
    Ok(group
        .iter()
        .map(|s| s.apply(cube).projections().a)
        .collect())
}

/// `S(D)`: the distinct Projection-A arrays over the whole orbit of `cube`.
pub fn projection_set(cube: &CostasCube) -> Result<BTreeSet<Permutation>> {
    projection_a_set(cube, &SymmetryElement::all())
}

/// `S(D)` computed over the 24 rotations only.
pub fn projection_set_rotations(cube: &CostasCube) -> Result<BTreeSet<Permutation>> {
    projection_a_set(cube, &SymmetryElement::rotations())
}

/// Groups a set of arrays by dihedral class, keyed by canonical form.
pub fn group_by_class(
    arrays: impl IntoIterator<Item = Permutation>,
) -> std::collections::BTreeMap<Permutation, Vec<Permutation>> {
    let mut groups: std::collections::BTreeMap<Permutation, Vec<Permutation>> = Default::default();
    for a in arrays {
        groups.entry(canonical_array(&a)).or_default().push(a);
    }
    for members in groups.values_mut() {
        members.sort();
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cube_group_is_closed_and_has_rotation_subgroup() {
        let all = SymmetryElement::all();
        let set: BTreeSet<_> = all.iter().copied().collect();
        assert_eq!(set.len(), 48);
        for a in &all {
            assert_eq!(a.compose(&a.inverse()), SymmetryElement::IDENTITY);
            for b in &all {
                assert!(set.contains(&a.compose(b)));
            }
        }
        let rot = SymmetryElement::rotations();
        assert_eq!(rot.len(), 24);
        for a in &rot {
            for b in &rot {
                assert!(a.compose(b).is_rotation());
            }
        }
    }

    #[test]
    fn cube_action_respects_composition() {
        let cube = CostasCube::from_triples(&[
            [1, 6, 4],
            [2, 4, 6],
            [3, 1, 2],
            [4, 3, 1],
            [5, 2, 5],
            [6, 5, 3],
        ])
        .unwrap();
        for a in SymmetryElement::all() {
            for b in SymmetryElement::all() {
                assert_eq!(a.apply(&b.apply(&cube)), a.compose(&b).apply(&cube));
            }
        }
        assert_eq!(SymmetryElement::IDENTITY.apply(&cube), cube);
    }

    #[test]
    fn planar_group() {
        let all = PlanarSymmetry::all();
        let set: BTreeSet<_> = all.iter().copied().collect();
        assert_eq!(set.len(), 8);
        let perm = p(&[3, 5, 4, 2, 6, 1]);
        for a in &all {
            for b in &all {
                assert!(set.contains(&a.compose(b)));
                assert_eq!(a.apply(&b.apply(&perm)), a.compose(b).apply(&perm));
            }
        }
    }

    #[test]
    fn planar_examples() {
        let perm = p(&[3, 5, 4, 2, 6, 1]);
        assert_eq!(PlanarSymmetry::IDENTITY.apply(&perm), perm);
        assert_eq!(
            PlanarSymmetry::REFLECT_VERTICAL.apply(&p(&[2, 1])),
            p(&[1, 2])
        );
        assert_eq!(PlanarSymmetry::TRANSPOSE.apply(&perm), perm.inverse());
        assert_eq!(array_orbit(&p(&[2, 4, 5, 1, 6, 3])).len(), 4);
        assert_eq!(canonical_array(&p(&[2, 1])), p(&[1, 2]));
    }

    #[test]
    fn degenerate_orders() {
        assert_eq!(array_class_size(&p(&[1])), 1);
        assert_eq!(array_class_size(&p(&[2, 1])), 2);
        let one = CostasCube::diagonal(1);
        assert_eq!(cube_orbit(&one), vec![one.clone()]);
        assert_eq!(canonical_cube(&one), one);
        assert_eq!(SymmetryElement::flip(2).apply(&one), one);
        assert_eq!(projection_set(&one).unwrap().len(), 1);
    }

    #[test]
    fn projection_set_requires_costas() {
        assert_eq!(
            projection_set(&CostasCube::diagonal(4)),
            Err(Error::NotCostasCube)
        );
    }

    #[test]
    fn sd_of_size_four() {
        let cube = CostasCube::from_triples(&[
            [1, 2, 4],
            [2, 4, 1],
            [3, 5, 6],
            [4, 1, 2],
            [5, 6, 3],
            [6, 3, 5],
        ])
        .unwrap();
        let expected: BTreeSet<_> = [
            p(&[2, 4, 5, 1, 6, 3]),
            p(&[3, 6, 1, 5, 4, 2]),
            p(&[4, 1, 6, 2, 3, 5]),
            p(&[5, 3, 2, 6, 1, 4]),
        ]
        .into_iter()
        .collect();
        assert_eq!(projection_set(&cube).unwrap(), expected);
        assert_eq!(projection_set_rotations(&cube).unwrap(), expected);
    }
}
