//! Automorphism groups: the units of `Z_{p^k}` and `GL(2,p)`.
//!
//! [`Mat2`] admits singular matrices, since `1 - φ - ψ` usually is one;
//! [`Automorphism`] is the invertible wrapper. Centralizers are always
//! computed by filtering the whole of `GL(2,p)`; the parametrized
//! centralizers of [`table_centralizer`] exist so the two can be compared.

use std::fmt;

use crate::fp::{is_irreducible_quadratic, FpScalar, Prime, ResidueMod};
use crate::{Error, Result};

/// A 2×2 matrix over `F_p`, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    m: [u64; 4],
    p: Prime,
}

impl Mat2 {
    pub fn new(p: Prime, entries: [u64; 4]) -> Self {
        let q = p.get();
        Mat2 { m: entries.map(|e| e % q), p }
    }

    /// Builds a matrix from signed entries, reducing each modulo `p`.
    pub fn from_signed(p: Prime, entries: [i64; 4]) -> Self {
        let q = p.get() as i64;
        Mat2 { m: entries.map(|e| e.rem_euclid(q) as u64), p }
    }

    pub fn zero(p: Prime) -> Self {
        Mat2 { m: [0; 4], p }
    }

    pub fn identity(p: Prime) -> Self {
        Self::scalar(p, 1)
    }

    pub fn scalar(p: Prime, a: u64) -> Self {
        Self::new(p, [a, 0, 0, a])
    }

    #[inline]
    pub fn entries(&self) -> [u64; 4] {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> FpScalar {
        FpScalar::new(self.m[2 * row + col], self.p)
    }

    #[inline]
    pub fn modulus(&self) -> Prime {
        self.p
    }

    /// Dense index in `0..p^4`, following the lexicographic order of the entries.
    pub fn code(&self) -> usize {
        let q = self.p.get();
        (((self.m[0] * q + self.m[1]) * q + self.m[2]) * q + self.m[3]) as usize
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        debug_assert_eq!(self.p, rhs.p);
        let q = self.p.get();
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = rhs.m;
        Mat2 {
            m: [(a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q],
            p: self.p,
        }
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let q = self.p.get();
        let mut m = self.m;
        for (x, y) in m.iter_mut().zip(rhs.m) {
            *x = (*x + y) % q;
        }
        Mat2 { m, p: self.p }
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        let q = self.p.get();
        let mut m = self.m;
        for (x, y) in m.iter_mut().zip(rhs.m) {
            *x = (*x + q - y) % q;
        }
        Mat2 { m, p: self.p }
    }

    pub fn det(&self) -> FpScalar {
        let q = self.p.get();
        let [a, b, c, d] = self.m;
        FpScalar::new((a * d + q * q - (b * c) % (q * q)) % q, self.p)
    }

    /// 0 for the zero matrix, 1 for a nonzero singular matrix, 2 otherwise.
    pub fn rank(&self) -> u32 {
        if self.m == [0; 4] {
            0
        } else if self.det().is_zero() {
            1
        } else {
            2
        }
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn inv(&self) -> Result<Mat2> {
        let d = self.det().inv().map_err(|_| Error::Singular)?.value();
        let q = self.p.get();
        let [a, b, c, e] = self.m;
        Ok(Mat2 {
            m: [(e * d) % q, ((q - b) % q * d) % q, ((q - c) % q * d) % q, (a * d) % q],
            p: self.p,
        })
    }

    /// Applies the matrix to the column vector `(x, y)`.
    #[inline]
    pub fn apply(&self, x: u64, y: u64) -> (u64, u64) {
        let q = self.p.get();
        let [a, b, c, d] = self.m;
        ((a * x + b * y) % q, (c * x + d * y) % q)
    }

    pub fn commutes_with(&self, rhs: &Mat2) -> bool {
        self.mul(rhs) == rhs.mul(self)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// All of `GL(2,p)` in lexicographic order of entries.
pub fn gl2_elements(p: Prime) -> Vec<Mat2> {
    let q = p.get();
    let mut out = Vec::with_capacity(gl2_order(p) as usize);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let m = Mat2 { m: [a, b, c, d], p };
                    if m.is_invertible() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// `(p² - 1)(p² - p)`.
pub fn gl2_order(p: Prime) -> u64 {
    let q = p.get();
    (q * q - 1) * (q * q - q)
}

/// An automorphism of `Z_{p^k}` (a unit) or of `Z_p²` (an invertible matrix).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Automorphism {
    Unit(ResidueMod),
    Matrix(Mat2),
}

impl Automorphism {
    pub fn unit(r: ResidueMod) -> Result<Self> {
        if r.is_unit() {
            Ok(Automorphism::Unit(r))
        } else {
            Err(Error::NotInvertible)
        }
    }

    pub fn matrix(m: Mat2) -> Result<Self> {
        if m.is_invertible() {
            Ok(Automorphism::Matrix(m))
        } else {
            Err(Error::Singular)
        }
    }

    pub fn as_matrix(&self) -> Option<&Mat2> {
        match self {
            Automorphism::Matrix(m) => Some(m),
            Automorphism::Unit(_) => None,
        }
    }

    pub fn as_unit(&self) -> Option<ResidueMod> {
        match self {
            Automorphism::Unit(r) => Some(*r),
            Automorphism::Matrix(_) => None,
        }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Automorphism) -> Result<Automorphism> {
        match (self, rhs) {
            (Automorphism::Unit(a), Automorphism::Unit(b)) => Ok(Automorphism::Unit(a.mul(*b)?)),
            (Automorphism::Matrix(a), Automorphism::Matrix(b)) if a.modulus() == b.modulus() => {
                Ok(Automorphism::Matrix(a.mul(b)))
            }
            _ => Err(Error::GroupMismatch),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        match self {
            Automorphism::Unit(a) => Automorphism::Unit(a.inv().expect("units are invertible")),
            Automorphism::Matrix(m) => Automorphism::Matrix(m.inv().expect("automorphisms are invertible")),
        }
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Automorphism::Unit(r) => write!(f, "{r}"),
            Automorphism::Matrix(m) => write!(f, "{m}"),
        }
    }
}

/// True iff `a ∘ b = b ∘ a`.
pub fn commutes(a: &Automorphism, b: &Automorphism) -> Result<bool> {
    match (a, b) {
        (Automorphism::Unit(x), Automorphism::Unit(y)) => {
            x.mul(*y)?;
            Ok(true)
        }
        (Automorphism::Matrix(x), Automorphism::Matrix(y)) if x.modulus() == y.modulus() => Ok(x.commutes_with(y)),
        _ => Err(Error::GroupMismatch),
    }
}

/// `Aut(Z_{p^k})`: every residue coprime to `p`, ascending.
pub fn units(p: Prime, k: u32) -> Result<Vec<Automorphism>> {
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    let m = p.pow(k)?;
    (0..m)
        .filter(|v| v % p.get() != 0)
        .map(|v| ResidueMod::new(v, p, k).map(Automorphism::Unit))
        .collect()
}

/// The four shapes of conjugacy class representatives in `GL(2,p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepKind {
    /// `[[a,0],[0,a]]`, `a ≠ 0`.
    ScalarDiag(u64),
    /// `[[a,0],[0,b]]`, `0 < a < b`.
    DistinctDiag(u64, u64),
    /// `[[a,1],[0,a]]`, `a ≠ 0`.
    Jordan(u64),
    /// `[[0,1],[a,b]]` with `x² - b·x - a` irreducible.
    IrreducibleCompanion(u64, u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjClassRep {
    kind: RepKind,
    p: Prime,
}

impl ConjClassRep {
    pub fn new(kind: RepKind, p: Prime) -> Result<Self> {
        let q = p.get();
        let ok = match kind {
            RepKind::ScalarDiag(a) | RepKind::Jordan(a) => a > 0 && a < q,
            RepKind::DistinctDiag(a, b) => 0 < a && a < b && b < q,
            RepKind::IrreducibleCompanion(a, b) => {
                a < q && b < q && is_irreducible_quadratic(FpScalar::new(a, p), FpScalar::new(b, p))
            }
        };
        if ok {
            Ok(ConjClassRep { kind, p })
        } else {
            Err(Error::NotRepresentative)
        }
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn to_matrix(&self) -> Mat2 {
        let p = self.p;
        match self.kind {
            RepKind::ScalarDiag(a) => Mat2::new(p, [a, 0, 0, a]),
            RepKind::DistinctDiag(a, b) => Mat2::new(p, [a, 0, 0, b]),
            RepKind::Jordan(a) => Mat2::new(p, [a, 1, 0, a]),
            RepKind::IrreducibleCompanion(a, b) => Mat2::new(p, [0, 1, a, b]),
        }
    }

    /// Recognizes a matrix written literally in one of the representative shapes.
    pub fn from_matrix(m: &Mat2) -> Option<Self> {
        let [a, b, c, d] = m.entries();
        let kind = match (a, b, c, d) {
            (a, 0, 0, d) if a == d => RepKind::ScalarDiag(a),
            (a, 0, 0, d) => RepKind::DistinctDiag(a, d),
            (a, 1, 0, d) if a == d => RepKind::Jordan(a),
            (0, 1, c, d) => RepKind::IrreducibleCompanion(c, d),
            _ => return None,
        };
        ConjClassRep::new(kind, m.modulus()).ok()
    }
}

/// All `p² - 1` conjugacy class representatives of `GL(2,p)`, grouped by kind.
pub fn conj_class_reps(p: Prime) -> Vec<ConjClassRep> {
    let q = p.get();
    let mut kinds = Vec::new();
    kinds.extend((1..q).map(RepKind::ScalarDiag));
    for a in 1..q {
        kinds.extend((a + 1..q).map(|b| RepKind::DistinctDiag(a, b)));
    }
    kinds.extend((1..q).map(RepKind::Jordan));
    for a in 0..q {
        for b in 0..q {
            if is_irreducible_quadratic(FpScalar::new(a, p), FpScalar::new(b, p)) {
                kinds.push(RepKind::IrreducibleCompanion(a, b));
            }
        }
    }
    kinds.into_iter().map(|kind| ConjClassRep { kind, p }).collect()
}

/// A set of matrices, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSet {
    members: Vec<Mat2>,
}

impl MatrixSet {
    pub fn new(mut members: Vec<Mat2>) -> Self {
        members.sort();
        members.dedup();
        MatrixSet { members }
    }

    pub fn members(&self) -> &[Mat2] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.members.binary_search(m).is_ok()
    }

    /// Closed under products and inverses.
    pub fn is_subgroup(&self) -> bool {
        self.members.iter().all(|a| {
            a.inv().map(|i| self.contains(&i)).unwrap_or(false) && self.members.iter().all(|b| self.contains(&a.mul(b)))
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(i, a)| self.members[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Members that also commute with `m`.
    pub fn filter_commuting(&self, m: &Mat2) -> MatrixSet {
        MatrixSet { members: self.members.iter().filter(|b| b.commutes_with(m)).copied().collect() }
    }
}

/// `C(A) = {B ∈ GL(2,p) : AB = BA}`, by filtering the whole group.
pub fn centralizer(a: &Mat2) -> Result<MatrixSet> {
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(centralizer_in(&gl2_elements(a.modulus()), a))
}

/// Centralizer of `a` inside a precomputed list of `GL(2,p)` elements.
pub(crate) fn centralizer_in(group: &[Mat2], a: &Mat2) -> MatrixSet {
    MatrixSet::new(group.iter().filter(|b| a.commutes_with(b)).copied().collect())
}

/// The centralizer of a representative written out from its parametrization:
/// all of `GL(2,p)`, the diagonal matrices, `[[u,v],[0,u]]`, or
/// `[[u,v],[a·v,u+b·v]]`.
pub fn table_centralizer(rep: &ConjClassRep) -> MatrixSet {
    let p = rep.modulus();
    let q = p.get();
    let mut out = Vec::new();
    match rep.kind() {
        RepKind::ScalarDiag(_) => out = gl2_elements(p),
        RepKind::DistinctDiag(..) => {
            for u in 1..q {
                for v in 1..q {
                    out.push(Mat2::new(p, [u, 0, 0, v]));
                }
            }
        }
        RepKind::Jordan(_) => {
            for u in 1..q {
                for v in 0..q {
                    out.push(Mat2::new(p, [u, v, 0, u]));
                }
            }
        }
        RepKind::IrreducibleCompanion(a, b) => {
            for u in 0..q {
                for v in 0..q {
                    if u != 0 || v != 0 {
                        out.push(Mat2::new(p, [u, v, a * v, u + b * v]));
                    }
                }
            }
        }
    }
    MatrixSet::new(out)
}

/// Brute-force partition of `GL(2,p)` into conjugacy classes, in order of
/// each class's least member.
pub fn conjugacy_partition(p: Prime) -> Vec<Vec<Mat2>> {
    let group = gl2_elements(p);
    let inverses: Vec<Mat2> = group.iter().map(|g| g.inv().expect("invertible")).collect();
    let q = p.get() as usize;
    let mut seen = vec![false; q.pow(4)];
    let mut classes = Vec::new();
    for a in &group {
        if seen[a.code()] {
            continue;
        }
        let mut class: Vec<Mat2> = group.iter().zip(&inverses).map(|(h, hi)| h.mul(a).mul(hi)).collect();
        class.sort();
        class.dedup();
        for m in &class {
            seen[m.code()] = true;
        }
        classes.push(class);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn matrix_basics() {
        let f3 = p(3);
        let a = Mat2::new(f3, [2, 0, 0, 2]);
        assert_eq!(a.det().value(), 1);
        assert_eq!(Mat2::new(p(7), [3, 0, 0, 5]).det().value(), 1);
        assert_eq!(Mat2::zero(f3).rank(), 0);
        assert_eq!(Mat2::new(f3, [1, 1, 2, 2]).rank(), 1);
        assert_eq!(Mat2::identity(f3).rank(), 2);
        assert_eq!(Mat2::new(f3, [1, 1, 2, 2]).inv(), Err(Error::Singular));
        for m in gl2_elements(p(5)) {
            assert_eq!(m.mul(&m.inv().unwrap()), Mat2::identity(p(5)));
        }
        assert_eq!(Mat2::from_signed(f3, [-1, 0, 4, -3]).entries(), [2, 0, 1, 0]);
    }

    #[test]
    fn to_matrix_examples() {
        let f3 = p(3);
        let r = ConjClassRep::new(RepKind::ScalarDiag(2), f3).unwrap();
        assert_eq!(r.to_matrix().entries(), [2, 0, 0, 2]);
        let r = ConjClassRep::new(RepKind::Jordan(1), f3).unwrap();
        assert_eq!(r.to_matrix().entries(), [1, 1, 0, 1]);
        let r = ConjClassRep::new(RepKind::IrreducibleCompanion(1, 1), p(2)).unwrap();
        assert_eq!(r.to_matrix().entries(), [0, 1, 1, 1]);
        assert!(ConjClassRep::new(RepKind::DistinctDiag(2, 1), f3).is_err());
        assert!(ConjClassRep::new(RepKind::IrreducibleCompanion(0, 1), f3).is_err());
    }

    #[test]
    fn representative_counts() {
        assert_eq!(conj_class_reps(p(2)).len(), 3);
        assert_eq!(conj_class_reps(p(3)).len(), 8);
        assert_eq!(conj_class_reps(p(5)).len(), 24);
        for q in [2, 3, 5, 7, 11] {
            assert_eq!(conj_class_reps(p(q)).len() as u64, q * q - 1);
        }
    }

    #[test]
    fn from_matrix_roundtrips_representatives() {
        for q in [2, 3, 5, 7] {
            for rep in conj_class_reps(p(q)) {
                assert_eq!(ConjClassRep::from_matrix(&rep.to_matrix()), Some(rep));
            }
        }
        assert_eq!(ConjClassRep::from_matrix(&Mat2::new(p(3), [1, 0, 1, 1])), None);
        assert_eq!(ConjClassRep::from_matrix(&Mat2::new(p(3), [2, 0, 0, 1])), None);
    }

    #[test]
    fn centralizer_examples() {
        let f3 = p(3);
        let scalar = ConjClassRep::new(RepKind::ScalarDiag(2), f3).unwrap().to_matrix();
        assert_eq!(centralizer(&scalar).unwrap().len() as u64, gl2_order(f3));
        let jordan = ConjClassRep::new(RepKind::Jordan(1), f3).unwrap().to_matrix();
        assert_eq!(centralizer(&jordan).unwrap().len(), 6);
        let comp = ConjClassRep::new(RepKind::IrreducibleCompanion(1, 1), p(2)).unwrap().to_matrix();
        assert_eq!(centralizer(&comp).unwrap().len(), 3);
        assert_eq!(centralizer(&Mat2::zero(f3)), Err(Error::Singular));
    }

    #[test]
    fn commutes_examples() {
        let nine: Vec<_> = units(p(3), 2).unwrap();
        assert!(commutes(&nine[1], &nine[4]).unwrap());
        let f3 = p(3);
        let upper = Automorphism::matrix(Mat2::new(f3, [1, 1, 0, 1])).unwrap();
        let lower = Automorphism::matrix(Mat2::new(f3, [1, 0, 1, 1])).unwrap();
        assert!(!commutes(&upper, &lower).unwrap());
        let scalar = Automorphism::matrix(Mat2::scalar(f3, 2)).unwrap();
        for m in gl2_elements(f3) {
            assert!(commutes(&scalar, &Automorphism::Matrix(m)).unwrap());
        }
        assert_eq!(commutes(&nine[0], &upper), Err(Error::GroupMismatch));
    }

    #[test]
    fn unit_listings() {
        let vals = |p_: u64, k| units(p(p_), k).unwrap().iter().map(|u| u.as_unit().unwrap().value()).collect::<Vec<_>>();
        assert_eq!(vals(3, 2), vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(vals(2, 2), vec![1, 3]);
        assert_eq!(vals(5, 1).len(), 4);
        for (q, k) in [(2u64, 5u32), (3, 3), (7, 2)] {
            assert_eq!(vals(q, k).len() as u64, q.pow(k) - q.pow(k - 1));
        }
    }

    #[test]
    fn automorphism_constructors() {
        let f3 = p(3);
        assert_eq!(Automorphism::matrix(Mat2::new(f3, [1, 1, 1, 1])), Err(Error::Singular));
        assert_eq!(Automorphism::unit(ResidueMod::new(3, f3, 2).unwrap()), Err(Error::NotInvertible));
        let a = Automorphism::matrix(Mat2::new(f3, [1, 1, 0, 1])).unwrap();
        assert_eq!(a.compose(&a.inverse()).unwrap(), Automorphism::Matrix(Mat2::identity(f3)));
    }

    #[test]
    fn table_centralizers_are_commutative_subgroups() {
        for q in [2, 3, 5] {
            for rep in conj_class_reps(p(q)) {
                let c = table_centralizer(&rep);
                assert!(c.is_subgroup());
                let commutative = !matches!(rep.kind(), RepKind::ScalarDiag(_));
                if commutative {
                    assert!(c.is_commutative(), "{:?}", rep);
                }
            }
        }
    }
}
