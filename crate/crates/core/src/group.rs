//! The ambient abelian groups `Z_{p^k}` and `Z_p²`.
//!
//! Elements have a fixed index: the residue itself for `Z_{p^k}`, and
//! `x·p + y` for the vector `(x, y)` of `Z_p²`. Everything downstream
//! (Cayley tables, coset lists, orbit representatives) uses this order.

use std::fmt;

use serde::Serialize;

use crate::fp::{FpScalar, Prime, ResidueMod};
use crate::gl2::{Automorphism, Mat2};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic { p: Prime, k: u32 },
    ElemAbelianRank2 { p: Prime },
}

impl GroupSpec {
    pub fn cyclic(p: Prime, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        p.pow(k)?;
        Ok(GroupSpec::Cyclic { p, k })
    }

    pub fn rank2(p: Prime) -> Self {
        GroupSpec::ElemAbelianRank2 { p }
    }

    pub fn prime(&self) -> Prime {
        match *self {
            GroupSpec::Cyclic { p, .. } | GroupSpec::ElemAbelianRank2 { p } => p,
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            GroupSpec::Cyclic { p, k } => p.get().pow(k) as usize,
            GroupSpec::ElemAbelianRank2 { p } => (p.get() * p.get()) as usize,
        }
    }

    pub fn zero(&self) -> GroupElement {
        self.element_at(0)
    }

    /// The element with the given index.
    pub fn element_at(&self, index: usize) -> GroupElement {
        let i = index as u64;
        match *self {
            GroupSpec::Cyclic { p, k } => {
                GroupElement::Residue(ResidueMod::new(i, p, k).expect("validated at construction"))
            }
            GroupSpec::ElemAbelianRank2 { p } => {
                let q = p.get();
                GroupElement::Vector(FpScalar::new(i / q, p), FpScalar::new(i % q, p))
            }
        }
    }

    pub fn index_of(&self, e: &GroupElement) -> Result<usize> {
        if !self.contains(e) {
            return Err(Error::GroupMismatch);
        }
        Ok(match e {
            GroupElement::Residue(r) => r.value() as usize,
            GroupElement::Vector(x, y) => (x.value() * self.prime().get() + y.value()) as usize,
        })
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        match (self, e) {
            (GroupSpec::Cyclic { p, k }, GroupElement::Residue(r)) => r.prime() == *p && r.exponent() == *k,
            (GroupSpec::ElemAbelianRank2 { p }, GroupElement::Vector(x, y)) => x.modulus() == *p && y.modulus() == *p,
            _ => false,
        }
    }

    /// Index of the sum of the elements with indices `a` and `b`.
    #[inline]
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        match *self {
            GroupSpec::Cyclic { .. } => (a + b) % self.order(),
            GroupSpec::ElemAbelianRank2 { p } => {
                let q = p.get() as usize;
                ((a / q + b / q) % q) * q + (a % q + b % q) % q
            }
        }
    }

    /// Whether `m` acts on this group.
    pub fn admits(&self, m: &Endomorphism) -> bool {
        match (self, m) {
            (GroupSpec::Cyclic { p, k }, Endomorphism::Multiply(r)) => r.prime() == *p && r.exponent() == *k,
            (GroupSpec::ElemAbelianRank2 { p }, Endomorphism::Matrix(a)) => a.modulus() == *p,
            _ => false,
        }
    }

    pub fn admits_automorphism(&self, a: &Automorphism) -> bool {
        self.admits(&Endomorphism::from(*a))
    }

    /// Index of `m(g)` for the element with index `g`. `m` must act on this group.
    #[inline]
    pub fn apply_index(&self, m: &Endomorphism, g: usize) -> usize {
        match (self, m) {
            (GroupSpec::Cyclic { .. }, Endomorphism::Multiply(r)) => {
                ((g as u64 * r.value()) % self.order() as u64) as usize
            }
            (GroupSpec::ElemAbelianRank2 { p }, Endomorphism::Matrix(a)) => {
                let q = p.get();
                let (x, y) = a.apply(g as u64 / q, g as u64 % q);
                (x * q + y) as usize
            }
            _ => panic!("endomorphism does not act on {self}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { p, k } => write!(f, "cyclic:p={p},k={k}"),
            GroupSpec::ElemAbelianRank2 { p } => write!(f, "zp2:p={p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Residue(ResidueMod),
    Vector(FpScalar, FpScalar),
}

impl GroupElement {
    pub fn components(&self) -> Vec<u64> {
        match self {
            GroupElement::Residue(r) => vec![r.value()],
            GroupElement::Vector(x, y) => vec![x.value(), y.value()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Residue(r) => write!(f, "{r}"),
            GroupElement::Vector(x, y) => write!(f, "({x},{y})"),
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.components().serialize(s)
    }
}

pub fn add(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    match (a, b) {
        (GroupElement::Residue(x), GroupElement::Residue(y)) => Ok(GroupElement::Residue(x.add(*y)?)),
        (GroupElement::Vector(x1, y1), GroupElement::Vector(x2, y2)) if x1.modulus() == x2.modulus() => {
            Ok(GroupElement::Vector(x1.add(*x2), y1.add(*y2)))
        }
        _ => Err(Error::GroupMismatch),
    }
}

/// All elements in index order.
pub fn elements(g: &GroupSpec) -> Vec<GroupElement> {
    (0..g.order()).map(|i| g.element_at(i)).collect()
}

/// An endomorphism of `Z_{p^k}` (multiplication by a residue) or of `Z_p²`
/// (any 2×2 matrix, singular or not).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endomorphism {
    Multiply(ResidueMod),
    Matrix(Mat2),
}

impl Endomorphism {
    pub fn apply(&self, e: &GroupElement) -> Result<GroupElement> {
        match (self, e) {
            (Endomorphism::Multiply(r), GroupElement::Residue(x)) => Ok(GroupElement::Residue(r.mul(*x)?)),
            (Endomorphism::Matrix(m), GroupElement::Vector(x, y)) if m.modulus() == x.modulus() => {
                let (u, v) = m.apply(x.value(), y.value());
                Ok(GroupElement::Vector(FpScalar::new(u, m.modulus()), FpScalar::new(v, m.modulus())))
            }
            _ => Err(Error::GroupMismatch),
        }
    }

    /// `1 - φ - ψ`.
    pub fn one_minus(phi: &Automorphism, psi: &Automorphism) -> Result<Endomorphism> {
        match (phi, psi) {
            (Automorphism::Unit(a), Automorphism::Unit(b)) => {
                let one = ResidueMod::new(1, a.prime(), a.exponent())?;
                Ok(Endomorphism::Multiply(one.add(a.neg())?.add(b.neg())?))
            }
            (Automorphism::Matrix(a), Automorphism::Matrix(b)) if a.modulus() == b.modulus() => {
                Ok(Endomorphism::Matrix(Mat2::identity(a.modulus()).sub(a).sub(b)))
            }
            _ => Err(Error::GroupMismatch),
        }
    }
}

impl From<Automorphism> for Endomorphism {
    fn from(a: Automorphism) -> Self {
        match a {
            Automorphism::Unit(r) => Endomorphism::Multiply(r),
            Automorphism::Matrix(m) => Endomorphism::Matrix(m),
        }
    }
}

/// Coset representatives of `G / Im(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetList {
    pub representatives: Vec<GroupElement>,
    pub subgroup_order: usize,
    /// Element index → position of its coset in `representatives`.
    pub coset_of: Vec<usize>,
    /// Element index of each representative.
    pub rep_indices: Vec<usize>,
}

impl CosetList {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Computes `Im(M)` by applying `M` to every element, then picks each coset's
/// least element as its representative.
pub fn quotient_cosets(g: &GroupSpec, m: &Endomorphism) -> Result<CosetList> {
    if !g.admits(m) {
        return Err(Error::GroupMismatch);
    }
    let n = g.order();
    let mut in_image = vec![false; n];
    for i in 0..n {
        in_image[g.apply_index(m, i)] = true;
    }
    let image: Vec<usize> = (0..n).filter(|&i| in_image[i]).collect();

    const UNSET: usize = usize::MAX;
    let mut coset_of = vec![UNSET; n];
    let mut rep_indices = Vec::new();
    for i in 0..n {
        if coset_of[i] != UNSET {
            continue;
        }
        let id = rep_indices.len();
        rep_indices.push(i);
        for &h in &image {
            coset_of[g.add_index(i, h)] = id;
        }
    }
    Ok(CosetList {
        representatives: rep_indices.iter().map(|&i| g.element_at(i)).collect(),
        subgroup_order: image.len(),
        coset_of,
        rep_indices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::gl2_elements;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn vec2(x: u64, y: u64, q: u64) -> GroupElement {
        GroupElement::Vector(FpScalar::new(x, p(q)), FpScalar::new(y, p(q)))
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&vec2(1, 2, 3), &vec2(2, 2, 3)).unwrap(), vec2(0, 1, 3));
        let z4 = GroupSpec::cyclic(p(2), 2).unwrap();
        assert_eq!(add(&z4.element_at(3), &z4.element_at(3)).unwrap(), z4.element_at(2));
        let a = vec2(2, 1, 5);
        assert_eq!(add(&a, &GroupSpec::rank2(p(5)).zero()).unwrap(), a);
        assert_eq!(add(&a, &z4.zero()), Err(Error::GroupMismatch));
    }

    #[test]
    fn element_listing() {
        let comps: Vec<_> = elements(&GroupSpec::rank2(p(2))).iter().map(|e| e.components()).collect();
        assert_eq!(comps, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let comps: Vec<_> = elements(&GroupSpec::cyclic(p(2), 2).unwrap()).iter().map(|e| e.components()).collect();
        assert_eq!(comps, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(elements(&GroupSpec::rank2(p(3))).len(), 9);
    }

    #[test]
    fn index_ops_match_element_ops() {
        for g in [GroupSpec::rank2(p(3)), GroupSpec::cyclic(p(3), 2).unwrap(), GroupSpec::cyclic(p(2), 3).unwrap()] {
            let els = elements(&g);
            for (i, a) in els.iter().enumerate() {
                assert_eq!(g.index_of(a).unwrap(), i);
                for (j, b) in els.iter().enumerate() {
                    assert_eq!(g.index_of(&add(a, b).unwrap()).unwrap(), g.add_index(i, j));
                }
            }
        }
    }

    #[test]
    fn group_axioms_hold_exhaustively() {
        for g in [
            GroupSpec::rank2(p(2)),
            GroupSpec::rank2(p(3)),
            GroupSpec::rank2(p(5)),
            GroupSpec::rank2(p(7)),
            GroupSpec::cyclic(p(7), 2).unwrap(),
            GroupSpec::cyclic(p(2), 5).unwrap(),
        ] {
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.add_index(a, 0), a);
                assert!((0..n).any(|b| g.add_index(a, b) == 0));
                for b in 0..n {
                    assert_eq!(g.add_index(a, b), g.add_index(b, a));
                    for c in 0..n {
                        assert_eq!(g.add_index(g.add_index(a, b), c), g.add_index(a, g.add_index(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn coset_examples() {
        let g = GroupSpec::rank2(p(3));
        let zero = quotient_cosets(&g, &Endomorphism::Matrix(Mat2::zero(p(3)))).unwrap();
        assert_eq!(zero.len(), 9);
        let inv = quotient_cosets(&g, &Endomorphism::Matrix(Mat2::new(p(3), [1, 2, 0, 1]))).unwrap();
        assert_eq!(inv.len(), 1);
        let rank1 = quotient_cosets(&g, &Endomorphism::Matrix(Mat2::new(p(3), [1, 1, 2, 2]))).unwrap();
        assert_eq!(rank1.len(), 3);
        assert_eq!(rank1.subgroup_order, 3);
        let mismatched = quotient_cosets(&g, &Endomorphism::Matrix(Mat2::zero(p(5))));
        assert_eq!(mismatched, Err(Error::GroupMismatch));
    }

    #[test]
    fn coset_sizes_follow_rank() {
        for q in [2u64, 3, 5] {
            let g = GroupSpec::rank2(p(q));
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        for d in 0..q {
                            let m = Mat2::new(p(q), [a, b, c, d]);
                            let cl = quotient_cosets(&g, &Endomorphism::Matrix(m)).unwrap();
                            let r = m.rank();
                            assert_eq!(cl.subgroup_order as u64, q.pow(r));
                            assert_eq!(cl.len() as u64, q.pow(2 - r));
                            assert_eq!(cl.len() * cl.subgroup_order, g.order());
                            assert!(cl.representatives[0].is_zero());
                            let mut seen: Vec<usize> = cl.rep_indices.iter().map(|&i| cl.coset_of[i]).collect();
                            seen.dedup();
                            assert_eq!(seen, (0..cl.len()).collect::<Vec<_>>());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_coset_sizes_follow_gcd() {
        let g = GroupSpec::cyclic(p(3), 3).unwrap();
        for m in 0..27u64 {
            let r = ResidueMod::new(m, p(3), 3).unwrap();
            let cl = quotient_cosets(&g, &Endomorphism::Multiply(r)).unwrap();
            let gcd = crate::fp::gcd(m, 27);
            assert_eq!(cl.len() as u64, gcd, "m = {m}");
        }
    }

    #[test]
    fn endomorphism_apply_matches_index() {
        let g = GroupSpec::rank2(p(3));
        for m in gl2_elements(p(3)).into_iter().take(10) {
            let e = Endomorphism::Matrix(m);
            for (i, x) in elements(&g).iter().enumerate() {
                assert_eq!(g.index_of(&e.apply(x).unwrap()).unwrap(), g.apply_index(&e, i));
            }
        }
    }
}
