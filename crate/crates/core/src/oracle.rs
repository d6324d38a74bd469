//! Brute-force isomorphism testing and classification of Cayley tables.
//!
//! Nothing here looks at affine forms when deciding isomorphism: tables are
//! compared as raw operation tables. Agreement with [`crate::enumerate`] is
//! therefore an independent check of the enumeration.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::enumerate::enumerate;
use crate::gl2::{commutes, gl2_elements, units, Automorphism};
use crate::group::GroupSpec;
use crate::quasigroup::{build_table, column_cycle_type, count_idempotents, cycle_type, row_cycle_type};
use crate::quasigroup::{AffineForm, CayleyTable};
use crate::{Error, Result};

/// Largest order accepted by [`are_isomorphic`].
pub const ISOMORPHISM_CAP: usize = 16;
/// Largest order accepted by [`classify`], [`all_affine_forms`] and [`crosscheck`].
pub const CLASSIFY_CAP: usize = 9;

/// Relabeling-invariant summary of a table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    pub idempotent_count: usize,
    pub diagonal_cycle_type: Vec<usize>,
    pub row_profile: Vec<Vec<usize>>,
    pub column_profile: Vec<Vec<usize>>,
}

/// Per-element invariant: row cycle type, column cycle type, idempotency.
type Signature = (Vec<usize>, Vec<usize>, bool);

#[derive(Debug, Clone)]
struct Prepared {
    fingerprint: Fingerprint,
    signatures: Vec<Signature>,
}

fn prepare(t: &CayleyTable) -> Prepared {
    let n = t.order();
    let signatures: Vec<Signature> =
        (0..n).map(|i| (row_cycle_type(t, i), column_cycle_type(t, i), t.get(i, i) == i)).collect();
    let mut row_profile: Vec<_> = signatures.iter().map(|s| s.0.clone()).collect();
    let mut column_profile: Vec<_> = signatures.iter().map(|s| s.1.clone()).collect();
    row_profile.sort();
    column_profile.sort();
    Prepared {
        fingerprint: Fingerprint {
            order: n,
            idempotent_count: count_idempotents(t),
            diagonal_cycle_type: cycle_type(|i| t.get(i, i), n),
            row_profile,
            column_profile,
        },
        signatures,
    }
}

pub fn fingerprint(t: &CayleyTable) -> Fingerprint {
    prepare(t).fingerprint
}

/// True iff some bijection `σ` satisfies `σ(s[i][j]) = t[σ(i)][σ(j)]`.
///
/// Tables of different orders are never isomorphic; orders above
/// [`ISOMORPHISM_CAP`] are rejected.
pub fn are_isomorphic(s: &CayleyTable, t: &CayleyTable) -> Result<bool> {
    let n = s.order();
    if n != t.order() {
        return Ok(false);
    }
    if n > ISOMORPHISM_CAP {
        return Err(Error::OrderCap { order: n, cap: ISOMORPHISM_CAP });
    }
    let (ps, pt) = (prepare(s), prepare(t));
    Ok(prepared_isomorphic(s, &ps, t, &pt))
}

fn prepared_isomorphic(s: &CayleyTable, ps: &Prepared, t: &CayleyTable, pt: &Prepared) -> bool {
    if ps.fingerprint != pt.fingerprint {
        return false;
    }
    let search = Search { s, t, sig_s: &ps.signatures, sig_t: &pt.signatures };
    search.run(Partial::new(s.order()))
}

const UNSET: usize = usize::MAX;

#[derive(Clone)]
struct Partial {
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    assigned: Vec<usize>,
}

impl Partial {
    fn new(n: usize) -> Self {
        Partial { fwd: vec![UNSET; n], bwd: vec![UNSET; n], assigned: Vec::with_capacity(n) }
    }
}

struct Search<'a> {
    s: &'a CayleyTable,
    t: &'a CayleyTable,
    sig_s: &'a [Signature],
    sig_t: &'a [Signature],
}

impl Search<'_> {
    /// Maps `a ↦ b`, then closes the partial map under products. `None` on contradiction.
    fn extend(&self, mut st: Partial, a: usize, b: usize) -> Option<Partial> {
        let mut queue = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            if st.fwd[x] == y {
                continue;
            }
            if st.fwd[x] != UNSET || st.bwd[y] != UNSET || self.sig_s[x] != self.sig_t[y] {
                return None;
            }
            st.fwd[x] = y;
            st.bwd[y] = x;
            st.assigned.push(x);
            for &z in &st.assigned {
                let w = st.fwd[z];
                queue.push((self.s.get(x, z), self.t.get(y, w)));
                queue.push((self.s.get(z, x), self.t.get(w, y)));
            }
        }
        Some(st)
    }

    fn run(&self, st: Partial) -> bool {
        let n = self.s.order();
        let Some(a) = (0..n).find(|&i| st.fwd[i] == UNSET) else {
            return true;
        };
        (0..n)
            .filter(|&b| st.bwd[b] == UNSET && self.sig_s[a] == self.sig_t[b])
            .any(|b| self.extend(st.clone(), a, b).is_some_and(|next| self.run(next)))
    }
}

/// An isomorphism class found by [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    /// The first input that landed in this class.
    pub canonical_member: CayleyTable,
    /// How many inputs landed in this class.
    pub members: usize,
    pub fingerprint: Fingerprint,
}

/// Classes ordered by first occurrence, plus the class index of every input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub classes: Vec<IsoClass>,
    pub assignment: Vec<usize>,
}

pub fn classify(tables: &[CayleyTable]) -> Result<Vec<IsoClass>> {
    classify_with_assignment(tables).map(|c| c.classes)
}

/// Partitions `tables` into isomorphism classes.
///
/// Tables are bucketed by fingerprint and buckets are processed
/// independently; within a bucket every table is tested against the first
/// member of each class found so far.
pub fn classify_with_assignment(tables: &[CayleyTable]) -> Result<Classification> {
    let Some(first) = tables.first() else {
        return Ok(Classification { classes: Vec::new(), assignment: Vec::new() });
    };
    let n = first.order();
    if tables.iter().any(|t| t.order() != n) {
        return Err(Error::MixedOrders);
    }
    if n > CLASSIFY_CAP {
        return Err(Error::OrderCap { order: n, cap: CLASSIFY_CAP });
    }
    let prepared: Vec<Prepared> = tables.par_iter().map(prepare).collect();
    let mut buckets: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, p) in prepared.iter().enumerate() {
        buckets.entry(&p.fingerprint).or_default().push(i);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();

    // each entry: (first member, all members)
    let found: Vec<Vec<(usize, Vec<usize>)>> = buckets
        .par_iter()
        .map(|bucket| {
            let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
            for &i in bucket {
                let hit = classes
                    .iter()
                    .position(|(c, _)| prepared_isomorphic(&tables[*c], &prepared[*c], &tables[i], &prepared[i]));
                match hit {
                    Some(k) => classes[k].1.push(i),
                    None => classes.push((i, vec![i])),
                }
            }
            classes
        })
        .collect();

    let mut all: Vec<(usize, Vec<usize>)> = found.into_iter().flatten().collect();
    all.sort_by_key(|(first, _)| *first);
    let mut assignment = vec![0; tables.len()];
    let classes = all
        .into_iter()
        .enumerate()
        .map(|(k, (first, members))| {
            for &m in &members {
                assignment[m] = k;
            }
            IsoClass {
                canonical_member: tables[first].clone(),
                members: members.len(),
                fingerprint: prepared[first].fingerprint.clone(),
            }
        })
        .collect();
    Ok(Classification { classes, assignment })
}

/// Every `(φ, ψ, c)` with commuting automorphisms, `φ` then `ψ` then `c` in
/// their natural orders.
pub fn all_affine_forms(g: &GroupSpec) -> Result<Vec<AffineForm>> {
    if g.order() > CLASSIFY_CAP {
        return Err(Error::OrderCap { order: g.order(), cap: CLASSIFY_CAP });
    }
    let auts: Vec<Automorphism> = match *g {
        GroupSpec::Cyclic { p, k } => units(p, k)?,
        GroupSpec::ElemAbelianRank2 { p } => gl2_elements(p).into_iter().map(Automorphism::Matrix).collect(),
    };
    let mut forms = Vec::new();
    for phi in &auts {
        for psi in &auts {
            if commutes(phi, psi)? {
                for c in 0..g.order() {
                    forms.push(AffineForm::new(*g, *phi, *psi, g.element_at(c))?);
                }
            }
        }
    }
    Ok(forms)
}

/// Outcome of checking the enumerated representatives against the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub group: GroupSpec,
    pub forms: usize,
    pub classes: usize,
    pub class_sizes: Vec<usize>,
    pub enumerated: usize,
    /// Oracle class of each enumerated representative, in enumeration order.
    pub representative_classes: Vec<Option<usize>>,
}

impl CrosscheckReport {
    /// Every representative lies in its own class and every class has one.
    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.classes];
        for c in &self.representative_classes {
            match c {
                Some(k) if !hit[*k] => hit[*k] = true,
                _ => return false,
            }
        }
        hit.iter().all(|&h| h)
    }

    pub fn agrees(&self) -> bool {
        self.classes == self.enumerated && self.is_bijective()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group.to_string(),
            "forms": self.forms,
            "classes": self.classes,
            "class_sizes": self.class_sizes,
            "enumerated": self.enumerated,
            "bijective": self.is_bijective(),
            "verdict": if self.agrees() { "OK" } else { "MISMATCH" },
        })
    }
}

/// Classifies every affine table over `g` and matches the enumerated
/// representatives against the resulting classes.
pub fn crosscheck(g: &GroupSpec) -> Result<CrosscheckReport> {
    let forms = all_affine_forms(g)?;
    let tables: Vec<CayleyTable> = forms.par_iter().map(build_table).collect();
    let classification = classify_with_assignment(&tables)?;
    let classes = &classification.classes;
    let class_prepared: Vec<Prepared> = classes.iter().map(|c| prepare(&c.canonical_member)).collect();

    let report = enumerate(g);
    let representative_classes = report
        .triples
        .par_iter()
        .map(|t| {
            let table = t.table(*g);
            let prep = prepare(&table);
            (0..classes.len()).find(|&k| {
                prepared_isomorphic(&classes[k].canonical_member, &class_prepared[k], &table, &prep)
            })
        })
        .collect();
    Ok(CrosscheckReport {
        group: *g,
        forms: forms.len(),
        classes: classes.len(),
        class_sizes: classes.iter().map(|c| c.members).collect(),
        enumerated: report.total,
        representative_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{Prime, ResidueMod};
    use crate::gl2::Mat2;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn group_table(g: GroupSpec) -> CayleyTable {
        let id = match g {
            GroupSpec::Cyclic { p, k } => Automorphism::unit(ResidueMod::new(1, p, k).unwrap()).unwrap(),
            GroupSpec::ElemAbelianRank2 { p } => Automorphism::matrix(Mat2::identity(p)).unwrap(),
        };
        build_table(&AffineForm::new(g, id, id, g.zero()).unwrap())
    }

    #[test]
    fn reflexive_and_relabeled() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let g = GroupSpec::rank2(p(3));
        let forms = all_affine_forms(&g).unwrap();
        for f in forms.choose_multiple(&mut rng, 40) {
            let t = build_table(f);
            assert!(are_isomorphic(&t, &t).unwrap());
            let mut perm: Vec<usize> = (0..9).collect();
            perm.shuffle(&mut rng);
            let r = t.relabel(&perm);
            assert_eq!(fingerprint(&r), fingerprint(&t));
            assert!(are_isomorphic(&t, &r).unwrap());
            assert!(are_isomorphic(&r, &t).unwrap());
        }
    }

    /// Isomorphism by trying all `n!` bijections.
    fn isomorphic_by_permutations(s: &CayleyTable, t: &CayleyTable) -> bool {
        fn go(s: &CayleyTable, t: &CayleyTable, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let n = s.order();
            if perm.len() == n {
                return s.relabel(perm) == *t;
            }
            for b in 0..n {
                if !used[b] {
                    used[b] = true;
                    perm.push(b);
                    if go(s, t, perm, used) {
                        return true;
                    }
                    perm.pop();
                    used[b] = false;
                }
            }
            false
        }
        s.order() == t.order() && go(s, t, &mut Vec::new(), &mut vec![false; s.order()])
    }

    #[test]
    fn cyclic_and_klein_groups_differ() {
        let z4 = group_table(GroupSpec::cyclic(p(2), 2).unwrap());
        let v4 = group_table(GroupSpec::rank2(p(2)));
        assert!(!isomorphic_by_permutations(&z4, &v4));
        assert!(!are_isomorphic(&z4, &v4).unwrap());
    }

    #[test]
    fn search_agrees_with_permutation_brute_force() {
        let mut tables: Vec<CayleyTable> =
            all_affine_forms(&GroupSpec::cyclic(p(2), 2).unwrap()).unwrap().iter().map(build_table).collect();
        tables.extend(all_affine_forms(&GroupSpec::rank2(p(2))).unwrap().iter().map(build_table));
        tables.dedup();
        for (i, s) in tables.iter().enumerate().step_by(3) {
            for t in tables.iter().skip(i).step_by(5) {
                assert_eq!(are_isomorphic(s, t).unwrap(), isomorphic_by_permutations(s, t));
            }
        }
    }

    #[test]
    fn order_handling() {
        let z4 = group_table(GroupSpec::cyclic(p(2), 2).unwrap());
        let z3 = group_table(GroupSpec::cyclic(p(3), 1).unwrap());
        assert!(!are_isomorphic(&z4, &z3).unwrap());
        assert_eq!(classify(&[z4.clone(), z3]), Err(Error::MixedOrders));
        let big = group_table(GroupSpec::cyclic(p(17), 1).unwrap());
        assert_eq!(are_isomorphic(&big, &big), Err(Error::OrderCap { order: 17, cap: 16 }));
        let z16 = group_table(GroupSpec::cyclic(p(2), 4).unwrap());
        assert!(are_isomorphic(&z16, &z16).unwrap());
        assert!(classify(&[z16]).is_err());
        assert!(all_affine_forms(&GroupSpec::rank2(p(5))).is_err());
        assert!(classify(&[]).unwrap().is_empty());
    }

    #[test]
    fn affine_form_counts() {
        // GL(2,2) ≅ S_3 has 3 classes, so 6·3 = 18 commuting pairs
        assert_eq!(all_affine_forms(&GroupSpec::rank2(p(2))).unwrap().len(), 18 * 4);
        assert_eq!(all_affine_forms(&GroupSpec::cyclic(p(3), 2).unwrap()).unwrap().len(), 36 * 9);
        // GL(2,3): 48 elements, 8 classes
        assert_eq!(all_affine_forms(&GroupSpec::rank2(p(3))).unwrap().len(), 48 * 8 * 9);
    }

    #[test]
    fn small_classifications() {
        let tables: Vec<_> = all_affine_forms(&GroupSpec::rank2(p(2))).unwrap().iter().map(build_table).collect();
        let classes = classify(&tables).unwrap();
        assert_eq!(classes.len(), 9);
        assert_eq!(classes.iter().map(|c| c.members).sum::<usize>(), tables.len());
        let tables: Vec<_> =
            all_affine_forms(&GroupSpec::cyclic(p(2), 2).unwrap()).unwrap().iter().map(build_table).collect();
        assert_eq!(classify(&tables).unwrap().len(), 4);
    }

    #[test]
    fn classification_is_deterministic() {
        let tables: Vec<_> = all_affine_forms(&GroupSpec::rank2(p(2))).unwrap().iter().map(build_table).collect();
        let a = classify_with_assignment(&tables).unwrap();
        assert_eq!(a, classify_with_assignment(&tables).unwrap());
        assert_eq!(a.assignment[0], 0);
        let firsts: Vec<usize> =
            (0..a.classes.len()).map(|k| a.assignment.iter().position(|&c| c == k).unwrap()).collect();
        assert!(firsts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn crosscheck_klein() {
        let r = crosscheck(&GroupSpec::rank2(p(2))).unwrap();
        assert_eq!((r.classes, r.enumerated), (9, 9));
        assert!(r.agrees());
        assert_eq!(r.to_json()["verdict"], "OK");
    }
}
