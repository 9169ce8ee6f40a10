//! The correspondence relation on symbol pairs and the unipotent Weil
//! decomposition in both bases.
//!
//! A symplectic-side symbol pairs with an even-orthogonal-side symbol when
//! their bipartitions interleave the right way round and the defects satisfy
//! the matching sign equation. The decomposition of the unipotent Weil
//! vector has coefficient 1 exactly on the relation, and the point of the
//! brute-force check is that the same holds after transforming to the
//! almost-character basis family by family.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::families::{enumerate_special, Eps, Family, GroupKind, SpecialSymbol};
use crate::scalar::Scalar;
use crate::symbols::{enumerate_symbols, interleaves, minimal_symbol, Symbol};
use crate::transform::{Basis, PairVector};

/// All unipotent symbols of the group of the given kind and rank: the union
/// of the fixed-rank symbol sets over the defect class of the kind.
pub fn group_symbols(kind: GroupKind, rank: u32) -> Vec<Symbol> {
    let mut out = Vec::new();
    let bound = rank as i64 + 2;
    for defect in -bound..=bound {
        let class_ok = match kind {
            GroupKind::Sp => defect.rem_euclid(4) == 1,
            GroupKind::Opm => defect.rem_euclid(2) == 0,
        };
        if !class_ok || minimal_symbol(defect).rank() > rank {
            continue;
        }
        out.extend(enumerate_symbols(rank, defect));
    }
    out.sort();
    out
}

/// Decide whether a symplectic-side symbol and an even-orthogonal-side
/// symbol are related, and with which sign.
///
/// With bipartitions `[λ;μ]` and `[λ';μ']`: the pair is in the plus part iff
/// `μ ≼ λ'`, `μ' ≼ λ` and `def(Λ') = -def(Λ) + 1`; in the minus part iff
/// `λ' ≼ μ`, `λ ≼ μ'` and `def(Λ') = -def(Λ) - 1`.
pub fn in_relation(sp: &Symbol, o: &Symbol) -> Result<Option<Eps>, Error> {
    if sp.defect().rem_euclid(4) != 1 {
        return Err(Error::DefectClass {
            symbol: sp.to_string(),
            defect: sp.defect(),
        });
    }
    if o.defect().rem_euclid(2) != 0 {
        return Err(Error::DefectClass {
            symbol: o.to_string(),
            defect: o.defect(),
        });
    }
    let bl = sp.upsilon();
    let br = o.upsilon();
    let (lam, mu) = (bl.lambda(), bl.mu());
    let (lam_p, mu_p) = (br.lambda(), br.mu());
    if o.defect() == -sp.defect() + 1 && interleaves(mu, lam_p) && interleaves(mu_p, lam) {
        return Ok(Some(Eps::Plus));
    }
    if o.defect() == -sp.defect() - 1 && interleaves(lam_p, mu) && interleaves(lam, mu_p) {
        return Ok(Some(Eps::Minus));
    }
    Ok(None)
}

/// The full relation at fixed ranks, as a sorted pair list.
#[derive(Clone, PartialEq, Eq)]
pub struct ThetaRelation {
    n: u32,
    nprime: u32,
    pairs: Vec<(Symbol, Symbol, Eps)>,
}

impl ThetaRelation {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn nprime(&self) -> u32 {
        self.nprime
    }

    pub fn pairs(&self) -> &[(Symbol, Symbol, Eps)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, sp: &Symbol, o: &Symbol) -> Option<Eps> {
        self.pairs
            .iter()
            .find(|(a, b, _)| a == sp && b == o)
            .map(|&(_, _, e)| e)
    }
}

impl fmt::Debug for ThetaRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ThetaRelation(n={}, n'={}, {} pairs)",
            self.n,
            self.nprime,
            self.pairs.len()
        )
    }
}

/// Exhaustive scan of all symbol pairs at the given ranks.
pub fn build_relation(n: u32, nprime: u32) -> ThetaRelation {
    let left = group_symbols(GroupKind::Sp, n);
    let right = group_symbols(GroupKind::Opm, nprime);
    let mut pairs = Vec::new();
    for sp in &left {
        for o in &right {
            if let Some(eps) = in_relation(sp, o).expect("classes checked by construction") {
                pairs.push((sp.clone(), o.clone(), eps));
            }
        }
    }
    pairs.sort();
    ThetaRelation { n, nprime, pairs }
}

/// The pairs of a relation lying in one family product.
pub fn restrict_to_families(
    rel: &ThetaRelation,
    z: &SpecialSymbol,
    zp: &SpecialSymbol,
) -> Vec<(Symbol, Symbol, Eps)> {
    let fam = Family::new(z.clone());
    let fam_p = Family::new(zp.clone());
    rel.pairs
        .iter()
        .filter(|(a, b, _)| fam.index_of_symbol(a).is_some() && fam_p.index_of_symbol(b).is_some())
        .cloned()
        .collect()
}

/// Relation pairs within one family product, computed by direct member scan.
pub fn family_pairs(fam: &Family, fam_p: &Family) -> Vec<(usize, usize, Eps)> {
    let mut out = Vec::new();
    for (i, a) in fam.member_symbols().iter().enumerate() {
        for (j, b) in fam_p.member_symbols().iter().enumerate() {
            if let Some(eps) = in_relation(a, b).expect("family members have valid defects") {
                out.push((i, j, eps));
            }
        }
    }
    out
}

/// The block of the unipotent Weil vector supported on one family product,
/// in the requested pair of bases. In the irreducible basis the coefficients
/// are the indicator of the relation; the almost basis is reached through
/// the family transforms.
pub fn omega_block(
    fam: &Arc<Family>,
    fam_p: &Arc<Family>,
    basis: Basis,
    eps_filter: Option<Eps>,
) -> PairVector {
    let mut v = PairVector::zero(
        fam.clone(),
        fam_p.clone(),
        Basis::Irreducible,
        Basis::Irreducible,
    );
    for (i, j, eps) in family_pairs(fam, fam_p) {
        if eps_filter.is_none_or(|want| want == eps) {
            v.add_coeff(i, j, Scalar::ONE);
        }
    }
    match basis {
        Basis::Irreducible => v,
        Basis::Almost => v.transform_both(),
    }
}

/// The unipotent Weil vector at fixed ranks as its nonzero family blocks.
pub fn omega_unipotent(n: u32, nprime: u32, basis: Basis) -> Vec<PairVector> {
    let mut out = Vec::new();
    for z in enumerate_special(n, GroupKind::Sp) {
        let fam = Family::new(z);
        for zp in enumerate_special(nprime, GroupKind::Opm) {
            let fam_p = Family::new(zp);
            let block = omega_block(&fam, &fam_p, basis, None);
            if !block.coeffs().is_empty() {
                out.push(block);
            }
        }
    }
    out
}

/// Outcome of one family-product check inside the main-theorem sweep.
#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub z: SpecialSymbol,
    pub zp: SpecialSymbol,
    pub pair_count: usize,
    /// Almost-basis coefficients reproduce the indicator of the relation.
    pub bases_agree: bool,
    /// All coefficients in both bases are 0 or 1.
    pub multiplicity_one: bool,
}

impl FamilyCheck {
    pub fn pass(&self) -> bool {
        self.bases_agree && self.multiplicity_one
    }
}

/// Report of the brute-force equality check at fixed ranks.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub n: u32,
    pub nprime: u32,
    pub families: Vec<FamilyCheck>,
    /// Family blocks partition the full relation.
    pub partition_exact: bool,
}

impl TheoremReport {
    pub fn pass(&self) -> bool {
        self.partition_exact && self.families.iter().all(|f| f.pass())
    }

    pub fn total_pairs(&self) -> usize {
        self.families.iter().map(|f| f.pair_count).sum()
    }
}

fn check_block(fam: &Arc<Family>, fam_p: &Arc<Family>, eps_filter: Option<Eps>) -> FamilyCheck {
    let rho = omega_block(fam, fam_p, Basis::Irreducible, eps_filter);
    let almost = rho.transform_both();
    let bases_agree = almost.coeffs() == rho.coeffs();
    let multiplicity_one = almost
        .coeffs()
        .values()
        .chain(rho.coeffs().values())
        .all(|&c| c == Scalar::ONE || c.is_zero());
    FamilyCheck {
        z: fam.special().clone(),
        zp: fam_p.special().clone(),
        pair_count: rho.coeffs().len(),
        bases_agree,
        multiplicity_one,
    }
}

fn sweep(n: u32, nprime: u32, eps_filter: Option<Eps>) -> TheoremReport {
    let mut families = Vec::new();
    let mut covered = 0usize;
    for z in enumerate_special(n, GroupKind::Sp) {
        let fam = Family::new(z);
        for zp in enumerate_special(nprime, GroupKind::Opm) {
            let fam_p = Family::new(zp);
            let check = check_block(&fam, &fam_p, eps_filter);
            covered += check.pair_count;
            if check.pair_count > 0 || !check.pass() {
                families.push(check);
            }
        }
    }
    let rel = build_relation(n, nprime);
    let expected = match eps_filter {
        None => rel.len(),
        Some(want) => rel.pairs().iter().filter(|&&(_, _, e)| e == want).count(),
    };
    TheoremReport {
        n,
        nprime,
        families,
        partition_exact: covered == expected,
    }
}

/// Check that the unipotent Weil vector has identical indicator coefficients
/// in the irreducible and almost bases, family product by family product,
/// together with the multiplicity-one audit.
pub fn verify_main_theorem(n: u32, nprime: u32) -> TheoremReport {
    sweep(n, nprime, None)
}

/// The same check restricted to one sign of the relation. The equality is
/// expected to fail in general: only the combined relation transforms well.
pub fn verify_main_theorem_eps(n: u32, nprime: u32, eps: Eps) -> TheoremReport {
    sweep(n, nprime, Some(eps))
}

/// Which D-set to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DSide {
    /// Anchor on the symplectic side; collect its partners of the given sign.
    FromSp(Eps),
    /// Anchor on the orthogonal side; collect its symplectic partners.
    FromO,
}

/// The D-set of an anchor member against the opposite family.
pub fn d_set(fam: &Family, fam_p: &Family, anchor: &Symbol, side: DSide) -> Vec<Symbol> {
    match side {
        DSide::FromSp(eps) => fam_p
            .member_symbols()
            .iter()
            .filter(|b| in_relation(anchor, b).expect("valid defects") == Some(eps))
            .cloned()
            .collect(),
        DSide::FromO => fam
            .member_symbols()
            .iter()
            .filter(|a| in_relation(a, anchor).expect("valid defects").is_some())
            .cloned()
            .collect(),
    }
}

/// A family-pair relation is regular when both special symbols are all
/// singles and the two D-sets anchored at the special symbols are the
/// singletons `{Z'}` and `{Z}`.
pub fn is_regular(z: &SpecialSymbol, zp: &SpecialSymbol) -> bool {
    if z.kind() != GroupKind::Sp || zp.kind() != GroupKind::Opm {
        return false;
    }
    if &z.singles() != z.symbol() || &zp.singles() != zp.symbol() {
        return false;
    }
    let fam = Family::new(z.clone());
    let fam_p = Family::new(zp.clone());
    d_set(&fam, &fam_p, z.symbol(), DSide::FromSp(Eps::Plus)) == vec![zp.symbol().clone()]
        && d_set(&fam, &fam_p, zp.symbol(), DSide::FromO) == vec![z.symbol().clone()]
}

/// Smallest companion rank at which the symbol pairs with something, plus a
/// witnessing partner. Scans companion ranks in increasing order; the cap
/// `rank + entry count` always suffices for symbols in the two classes.
pub fn first_occurrence_witness(lam: &Symbol, target: GroupKind) -> Result<(u32, Symbol), Error> {
    let source = match target {
        GroupKind::Opm => GroupKind::Sp,
        GroupKind::Sp => GroupKind::Opm,
    };
    // validate the symbol's class by running the predicate once
    let probe = |cand: &Symbol| -> Result<Option<Eps>, Error> {
        match source {
            GroupKind::Sp => in_relation(lam, cand),
            GroupKind::Opm => in_relation(cand, lam),
        }
    };
    let cap = lam.rank() + lam.len() as u32;
    for nprime in 0..=cap {
        for cand in group_symbols(target, nprime) {
            if probe(&cand)?.is_some() {
                return Ok((nprime, cand));
            }
        }
    }
    Err(Error::ScanCapExceeded(cap))
}

/// Smallest companion rank at which the symbol occurs in the relation.
pub fn first_occurrence(lam: &Symbol, target: GroupKind) -> Result<u32, Error> {
    first_occurrence_witness(lam, target).map(|(n, _)| n)
}
