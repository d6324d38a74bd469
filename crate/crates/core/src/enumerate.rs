//! Isomorphism-class representatives of medial quasigroups affine over a group.
//!
//! Classes over `G` correspond to triples `(φ, ψ, c)` where `φ` runs over
//! conjugacy class representatives of `Aut(G)`, `ψ` over class
//! representatives of `C(φ)` under conjugation inside `C(φ)`, and `c` over
//! orbit representatives of `C(φ) ∩ C(ψ)` acting on `G / Im(1 - φ - ψ)`.
//!
//! For `Z_p²` every triple carries a [`CaseTag`] naming the shape of `φ`,
//! the shape of `ψ` where it matters, and whether `1 - φ - ψ` is regular or
//! of which rank. The tag is read off the matrix `1 - φ - ψ` itself.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::fp::{FpScalar, Prime};
use crate::gl2::{
    centralizer_in, conj_class_reps, gl2_elements, units, Automorphism, ConjClassRep, Mat2, MatrixSet, RepKind,
};
use crate::group::{quotient_cosets, CosetList, Endomorphism, GroupElement, GroupSpec};
use crate::quasigroup::{build_table, AffineForm, CayleyTable};
use crate::union_find::UnionFind;
use crate::{Error, Result};

/// Which sub-row of the `Z_p²` classification a triple belongs to.
///
/// The `case1` tags have a scalar `φ`; `case2` a diagonal `φ` with distinct
/// eigenvalues; `case3` a Jordan block; `case4` a companion matrix of an
/// irreducible quadratic. Cyclic groups use the single tag [`CaseTag::Cyclic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    ScalarScalarRegular,
    ScalarScalarSingular,
    ScalarDiagonalRegular,
    ScalarDiagonalSingular,
    ScalarJordanRegular,
    ScalarJordanSingular,
    ScalarIrreducible,
    DiagonalRank2,
    DiagonalRank1,
    DiagonalRank0,
    JordanRank2,
    JordanRank1,
    JordanRank0,
    IrreducibleRegular,
    IrreducibleSingular,
    Cyclic,
}

/// The fifteen `Z_p²` tags in row order.
pub const ZP2_TAGS: [CaseTag; 15] = [
    CaseTag::ScalarScalarRegular,
    CaseTag::ScalarScalarSingular,
    CaseTag::ScalarDiagonalRegular,
    CaseTag::ScalarDiagonalSingular,
    CaseTag::ScalarJordanRegular,
    CaseTag::ScalarJordanSingular,
    CaseTag::ScalarIrreducible,
    CaseTag::DiagonalRank2,
    CaseTag::DiagonalRank1,
    CaseTag::DiagonalRank0,
    CaseTag::JordanRank2,
    CaseTag::JordanRank1,
    CaseTag::JordanRank0,
    CaseTag::IrreducibleRegular,
    CaseTag::IrreducibleSingular,
];

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::ScalarScalarRegular => "case1.scalar-scalar.regular",
            CaseTag::ScalarScalarSingular => "case1.scalar-scalar.singular",
            CaseTag::ScalarDiagonalRegular => "case1.scalar-diagonal.regular",
            CaseTag::ScalarDiagonalSingular => "case1.scalar-diagonal.singular",
            CaseTag::ScalarJordanRegular => "case1.scalar-jordan.regular",
            CaseTag::ScalarJordanSingular => "case1.scalar-jordan.singular",
            CaseTag::ScalarIrreducible => "case1.scalar-irreducible.regular",
            CaseTag::DiagonalRank2 => "case2.diagonal.rank2",
            CaseTag::DiagonalRank1 => "case2.diagonal.rank1",
            CaseTag::DiagonalRank0 => "case2.diagonal.rank0",
            CaseTag::JordanRank2 => "case3.jordan.rank2",
            CaseTag::JordanRank1 => "case3.jordan.rank1",
            CaseTag::JordanRank0 => "case3.jordan.rank0",
            CaseTag::IrreducibleRegular => "case4.companion.regular",
            CaseTag::IrreducibleSingular => "case4.companion.singular",
            CaseTag::Cyclic => "cyclic",
        }
    }

    /// Leading case number: 1 to 4 for `Z_p²`, 0 for cyclic groups.
    pub fn case_number(self) -> u8 {
        match self {
            CaseTag::Cyclic => 0,
            t => match t.as_str().as_bytes()[4] {
                b'1' => 1,
                b'2' => 2,
                b'3' => 3,
                _ => 4,
            },
        }
    }

    /// Closed-form number of triples in this sub-row over `Z_p²`
    /// (`None` for the cyclic tag).
    pub fn table_count(self, p: Prime) -> Option<i128> {
        let p = p.get() as i128;
        Some(match self {
            CaseTag::ScalarScalarRegular | CaseTag::ScalarJordanRegular => p * p - 3 * p + 3,
            CaseTag::ScalarScalarSingular | CaseTag::ScalarJordanSingular => 2 * (p - 2),
            CaseTag::ScalarDiagonalRegular => (p - 2) * (p * p - 4 * p + 5) / 2,
            CaseTag::ScalarDiagonalSingular => 2 * (p - 2) * (p - 2),
            CaseTag::ScalarIrreducible => p * (p - 1) * (p - 1) / 2,
            CaseTag::DiagonalRank2 => (p - 2) * (p - 2) * (p * p - 3 * p + 4) / 2,
            CaseTag::DiagonalRank1 => 2 * (p - 2) * (p * p - 4 * p + 5),
            CaseTag::DiagonalRank0 => 2 * (p - 2) * (p - 3),
            CaseTag::JordanRank2 => p * (p * p - 3 * p + 3),
            CaseTag::JordanRank1 => 2 * (p - 1) * (p - 2),
            CaseTag::JordanRank0 => 3 * (p - 2),
            CaseTag::IrreducibleRegular => (p * p - p) * (p * p - 2) / 2,
            CaseTag::IrreducibleSingular => p * p - p,
            CaseTag::Cyclic => return None,
        })
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepresentativeTriple {
    pub phi: Automorphism,
    pub psi: Automorphism,
    pub c: GroupElement,
    pub case_tag: CaseTag,
}

impl RepresentativeTriple {
    pub fn affine_form(&self, group: GroupSpec) -> AffineForm {
        AffineForm::new(group, self.phi, self.psi, self.c).expect("enumerated triples are valid affine forms")
    }

    pub fn table(&self, group: GroupSpec) -> CayleyTable {
        build_table(&self.affine_form(group))
    }

    /// One JSONL record. The table, when present, is embedded as its text-format row lines.
    pub fn to_json(&self, group: GroupSpec, table: Option<&CayleyTable>) -> Value {
        let mut v = json!({
            "group": group.to_string(),
            "phi": automorphism_json(&self.phi),
            "psi": automorphism_json(&self.psi),
            "c": self.c.components(),
            "case_tag": self.case_tag.as_str(),
        });
        if let Some(t) = table {
            v["table"] = json!(t.row_lines());
        }
        v
    }
}

fn automorphism_json(a: &Automorphism) -> Value {
    match a {
        Automorphism::Unit(r) => json!(r.value()),
        Automorphism::Matrix(m) => json!(m.entries()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub group: GroupSpec,
    pub triples: Vec<RepresentativeTriple>,
    pub tallies: BTreeMap<CaseTag, usize>,
    pub total: usize,
}

impl EnumerationReport {
    fn from_triples(group: GroupSpec, triples: Vec<RepresentativeTriple>) -> Self {
        let mut tallies = BTreeMap::new();
        if let GroupSpec::ElemAbelianRank2 { .. } = group {
            for tag in ZP2_TAGS {
                tallies.insert(tag, 0);
            }
        }
        for t in &triples {
            *tallies.entry(t.case_tag).or_insert(0) += 1;
        }
        EnumerationReport { group, total: triples.len(), triples, tallies }
    }

    pub fn tally(&self, tag: CaseTag) -> usize {
        self.tallies.get(&tag).copied().unwrap_or(0)
    }

    /// Sum of the tallies whose tag has the given case number.
    pub fn case_subtotal(&self, case: u8) -> usize {
        self.tallies.iter().filter(|(t, _)| t.case_number() == case).map(|(_, n)| n).sum()
    }
}

/// Conjugacy class representatives of `Aut(G)`.
pub fn reps_x(g: &GroupSpec) -> Vec<Automorphism> {
    match *g {
        GroupSpec::Cyclic { p, k } => units(p, k).expect("validated group"),
        GroupSpec::ElemAbelianRank2 { p } => {
            conj_class_reps(p).iter().map(|r| Automorphism::Matrix(r.to_matrix())).collect()
        }
    }
}

/// Class representatives of `C(φ)` under conjugation inside `C(φ)`, for a
/// designated representative `φ`. The returned set is checked to be such a
/// system of representatives before it is handed out.
pub fn reps_y(g: &GroupSpec, phi: &Automorphism) -> Result<Vec<Automorphism>> {
    match (*g, phi) {
        (GroupSpec::Cyclic { .. }, Automorphism::Unit(_)) if g.admits_automorphism(phi) => Ok(reps_x(g)),
        (GroupSpec::ElemAbelianRank2 { p }, Automorphism::Matrix(m)) if m.modulus() == p => {
            let rep = ConjClassRep::from_matrix(m).ok_or(Error::NotRepresentative)?;
            let gl = gl2_elements(p);
            let c_phi = centralizer_in(&gl, m);
            let ys = y_candidates(rep, &c_phi);
            assert!(are_class_representatives(&ys, &c_phi), "Y set is not a system of class representatives");
            Ok(ys.into_iter().map(Automorphism::Matrix).collect())
        }
        _ => Err(Error::GroupMismatch),
    }
}

fn y_candidates(rep: ConjClassRep, c_phi: &MatrixSet) -> Vec<Mat2> {
    match rep.kind() {
        RepKind::ScalarDiag(_) => conj_class_reps(rep.modulus()).iter().map(|r| r.to_matrix()).collect(),
        _ => c_phi.members().to_vec(),
    }
}

/// True iff every element of `group` is conjugate, by an element of `group`,
/// to exactly one of `reps`.
pub fn are_class_representatives(reps: &[Mat2], group: &MatrixSet) -> bool {
    let Some(first) = group.members().first() else {
        return reps.is_empty();
    };
    let q = first.modulus().get() as usize;
    let inverses: Vec<Mat2> = group.members().iter().map(|h| h.inv().expect("invertible")).collect();
    const NONE: usize = usize::MAX;
    let mut owner = vec![NONE; q.pow(4)];
    let mut covered = 0;
    for (id, r) in reps.iter().enumerate() {
        if !group.contains(r) {
            return false;
        }
        for (h, hi) in group.members().iter().zip(&inverses) {
            let x = h.mul(r).mul(hi).code();
            if owner[x] == NONE {
                owner[x] = id;
                covered += 1;
            } else if owner[x] != id {
                return false;
            }
        }
    }
    covered == group.len()
}

/// `C(φ) ∩ C(ψ)`; the whole unit group for cyclic `G`.
pub fn stabilizer(g: &GroupSpec, phi: &Automorphism, psi: &Automorphism) -> Result<Vec<Automorphism>> {
    check_pair(g, phi, psi)?;
    Ok(match (*g, phi, psi) {
        (GroupSpec::Cyclic { .. }, ..) => reps_x(g),
        (GroupSpec::ElemAbelianRank2 { p }, Automorphism::Matrix(a), Automorphism::Matrix(b)) => {
            centralizer_in(&gl2_elements(p), a).filter_commuting(b).members().iter().map(|m| Automorphism::Matrix(*m)).collect()
        }
        _ => unreachable!("checked above"),
    })
}

fn check_pair(g: &GroupSpec, phi: &Automorphism, psi: &Automorphism) -> Result<()> {
    if !g.admits_automorphism(phi) || !g.admits_automorphism(psi) {
        return Err(Error::GroupMismatch);
    }
    if !crate::gl2::commutes(phi, psi)? {
        return Err(Error::NotCommuting);
    }
    Ok(())
}

/// Orbit representatives of `C(φ) ∩ C(ψ)` acting on `G / Im(1 - φ - ψ)`.
///
/// Each orbit is represented by its least coset representative, so the
/// zero element always comes first.
pub fn orbit_reps_c(g: &GroupSpec, phi: &Automorphism, psi: &Automorphism) -> Result<Vec<GroupElement>> {
    let stab = stabilizer(g, phi, psi)?;
    let cosets = quotient_cosets(g, &Endomorphism::one_minus(phi, psi)?)?;
    let stab: Vec<Endomorphism> = stab.into_iter().map(Endomorphism::from).collect();
    Ok(orbit_reps_on_cosets(g, &cosets, &stab).into_iter().map(|i| g.element_at(i)).collect())
}

/// Element indices of the orbit representatives, ascending.
fn orbit_reps_on_cosets(g: &GroupSpec, cosets: &CosetList, acting: &[Endomorphism]) -> Vec<usize> {
    let mut uf = UnionFind::new(cosets.len());
    for s in acting {
        for (id, &r) in cosets.rep_indices.iter().enumerate() {
            uf.union(id, cosets.coset_of[g.apply_index(s, r)]);
        }
    }
    (0..cosets.len()).filter(|&id| uf.find(id) == id).map(|id| cosets.rep_indices[id]).collect()
}

/// All representative triples over `G`, in deterministic order.
pub fn enumerate(g: &GroupSpec) -> EnumerationReport {
    let triples = match *g {
        GroupSpec::Cyclic { .. } => enumerate_cyclic(g),
        GroupSpec::ElemAbelianRank2 { p } => enumerate_rank2(g, p),
    };
    EnumerationReport::from_triples(*g, triples)
}

fn enumerate_cyclic(g: &GroupSpec) -> Vec<RepresentativeTriple> {
    let auts = reps_x(g);
    let acting: Vec<Endomorphism> = auts.iter().copied().map(Endomorphism::from).collect();
    auts.par_iter()
        .flat_map_iter(|phi| {
            let mut out = Vec::new();
            for psi in &auts {
                let m = Endomorphism::one_minus(phi, psi).expect("same group");
                let cosets = quotient_cosets(g, &m).expect("same group");
                for c in orbit_reps_on_cosets(g, &cosets, &acting) {
                    out.push(RepresentativeTriple { phi: *phi, psi: *psi, c: g.element_at(c), case_tag: CaseTag::Cyclic });
                }
            }
            out
        })
        .collect()
}

fn enumerate_rank2(g: &GroupSpec, p: Prime) -> Vec<RepresentativeTriple> {
    let gl = gl2_elements(p);
    let reps = conj_class_reps(p);
    let x: Vec<Mat2> = reps.iter().map(|r| r.to_matrix()).collect();
    let whole = MatrixSet::new(gl.clone());
    assert!(are_class_representatives(&x, &whole), "X is not a system of class representatives");

    reps.par_iter()
        .flat_map_iter(|rep| {
            let phi = rep.to_matrix();
            let c_phi = centralizer_in(&gl, &phi);
            let ys = y_candidates(*rep, &c_phi);
            // For scalar φ, Y = X was checked above against C(φ) = GL(2,p).
            if !matches!(rep.kind(), RepKind::ScalarDiag(_)) {
                assert!(c_phi.is_commutative(), "centralizer of {phi} is not commutative");
            }
            let mut out = Vec::new();
            for psi in ys {
                let m = Mat2::identity(p).sub(&phi).sub(&psi);
                let cosets = quotient_cosets(g, &Endomorphism::Matrix(m)).expect("same group");
                let cs = if cosets.len() == 1 {
                    vec![0]
                } else {
                    let acting: Vec<Endomorphism> =
                        c_phi.filter_commuting(&psi).members().iter().map(|s| Endomorphism::Matrix(*s)).collect();
                    orbit_reps_on_cosets(g, &cosets, &acting)
                };
                let tag = rank2_tag(rep.kind(), &psi, m.rank());
                for c in cs {
                    out.push(RepresentativeTriple {
                        phi: Automorphism::Matrix(phi),
                        psi: Automorphism::Matrix(psi),
                        c: g.element_at(c),
                        case_tag: tag,
                    });
                }
            }
            out
        })
        .collect()
}

fn rank2_tag(phi: RepKind, psi: &Mat2, rank: u32) -> CaseTag {
    let regular = rank == 2;
    match phi {
        RepKind::ScalarDiag(_) => {
            let psi_kind = ConjClassRep::from_matrix(psi).expect("Y = X for scalar φ").kind();
            match (psi_kind, regular) {
                (RepKind::ScalarDiag(_), true) => CaseTag::ScalarScalarRegular,
                (RepKind::ScalarDiag(_), false) => CaseTag::ScalarScalarSingular,
                (RepKind::DistinctDiag(..), true) => CaseTag::ScalarDiagonalRegular,
                (RepKind::DistinctDiag(..), false) => CaseTag::ScalarDiagonalSingular,
                (RepKind::Jordan(_), true) => CaseTag::ScalarJordanRegular,
                (RepKind::Jordan(_), false) => CaseTag::ScalarJordanSingular,
                (RepKind::IrreducibleCompanion(..), true) => CaseTag::ScalarIrreducible,
                (RepKind::IrreducibleCompanion(..), false) => {
                    unreachable!("1 - φ - ψ is regular for scalar φ and irreducible ψ")
                }
            }
        }
        RepKind::DistinctDiag(..) => [CaseTag::DiagonalRank0, CaseTag::DiagonalRank1, CaseTag::DiagonalRank2][rank as usize],
        RepKind::Jordan(_) => [CaseTag::JordanRank0, CaseTag::JordanRank1, CaseTag::JordanRank2][rank as usize],
        RepKind::IrreducibleCompanion(..) => {
            if regular {
                CaseTag::IrreducibleRegular
            } else {
                CaseTag::IrreducibleSingular
            }
        }
    }
}

/// `(1-u)² - b(1-u)(1+v) - a(1+v)²`, which equals `det(1 - φ - ψ)` for the
/// companion matrix `φ = [[0,1],[a,b]]` and `ψ = [[u,v],[a·v,u+b·v]]`.
pub fn companion_case_determinant(a: u64, b: u64, u: u64, v: u64, p: Prime) -> FpScalar {
    let s = |x: i64| FpScalar::from_i64(x, p);
    let one_minus_u = s(1 - u as i64);
    let one_plus_v = s(1 + v as i64);
    one_minus_u
        .mul(one_minus_u)
        .sub(s(b as i64).mul(one_minus_u).mul(one_plus_v))
        .sub(s(a as i64).mul(one_plus_v).mul(one_plus_v))
}

fn checked_pow(p: i128, e: u32) -> Result<i128> {
    p.checked_pow(e).ok_or(Error::Overflow)
}

fn cyclic_count_raw(p: i128, k: u32) -> Result<i128> {
    if k == 0 {
        return Err(Error::ZeroExponent);
    }
    let mut sum: i128 = 0;
    for i in k - 1..=2 * k - 1 {
        sum = sum.checked_add(checked_pow(p, i)?).ok_or(Error::Overflow)?;
    }
    checked_pow(p, 2 * k)?
        .checked_add(checked_pow(p, 2 * k - 2)?)
        .and_then(|x| x.checked_sub(checked_pow(p, k - 1).ok()?))
        .and_then(|x| x.checked_sub(sum))
        .ok_or(Error::Overflow)
}

fn order_p2_count_raw(p: i128) -> Result<i128> {
    let p2 = p.checked_mul(p).ok_or(Error::Overflow)?;
    let p3 = p2.checked_mul(p).ok_or(Error::Overflow)?;
    let p4 = p3.checked_mul(p).ok_or(Error::Overflow)?;
    Ok(2 * p4 - p3 - p2 - 3 * p - 1)
}

/// `p^{2k} + p^{2k-2} - p^{k-1} - Σ_{i=k-1}^{2k-1} p^i`.
pub fn closed_form_cyclic(p: Prime, k: u32) -> Result<i128> {
    cyclic_count_raw(p.get() as i128, k)
}

/// `p⁴ - p² - p - 1`.
pub fn closed_form_zp2(p: Prime) -> i128 {
    let p = p.get() as i128;
    p.pow(4) - p * p - p - 1
}

/// `2p⁴ - p³ - p² - 3p - 1`, the count over both groups of order `p²`.
pub fn closed_form_order_p2(p: Prime) -> i128 {
    order_p2_count_raw(p.get() as i128).expect("p ≤ 2^15")
}

/// Number of medial quasigroups of order `n`, as a product over the prime
/// powers of `n`. Only exponents 1 and 2 are known.
pub fn count_composite(n: u64) -> Result<i128> {
    if n == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    let mut total: i128 = 1;
    for (p, k) in factorize(n) {
        let factor = match k {
            1 => cyclic_count_raw(p as i128, 1)?,
            2 => order_p2_count_raw(p as i128)?,
            _ => return Err(Error::UnknownPrimePowerCount { p, k }),
        };
        total = total.checked_mul(factor).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
