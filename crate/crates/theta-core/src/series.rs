//! Symbolic layer for Lusztig-series triples.
//!
//! A triple carries an opaque general-linear/unitary factor (a label with a
//! declared rank), a minus-part symbol and a plus-part symbol, with the part
//! classes fixed by the ambient group. Occurrence of a pair of triples in
//! the correspondence reduces to label equality, equality on the matched
//! part, and the unipotent relation on the coupled part; the two predicate
//! variants test the coupled part in the irreducible or the almost basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::families::{family_of, Family, GroupKind};
use crate::scalar::Scalar;
use crate::symbols::Symbol;
use crate::theta::{group_symbols, in_relation, omega_block};
use crate::transform::{fourier_entry, Basis};

/// The ambient group of a series triple.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SeriesGroup {
    Sp,
    Opm,
    SOodd,
}

impl SeriesGroup {
    /// Defect classes of the (minus, plus) parts.
    fn part_kinds(self) -> (GroupKind, GroupKind) {
        match self {
            SeriesGroup::Sp => (GroupKind::Opm, GroupKind::Sp),
            SeriesGroup::Opm => (GroupKind::Opm, GroupKind::Opm),
            SeriesGroup::SOodd => (GroupKind::Sp, GroupKind::Sp),
        }
    }
}

impl fmt::Display for SeriesGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesGroup::Sp => write!(f, "sp"),
            SeriesGroup::Opm => write!(f, "o"),
            SeriesGroup::SOodd => write!(f, "so-odd"),
        }
    }
}

/// The identification class of the semisimple zero part, tracked only up to
/// sign.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

fn class_ok(kind: GroupKind, s: &Symbol) -> bool {
    match kind {
        GroupKind::Sp => s.defect().rem_euclid(4) == 1,
        GroupKind::Opm => s.defect().rem_euclid(2) == 0,
    }
}

/// A symbolic element of a Lusztig series: an opaque zero-part label with a
/// rank, two part symbols, and the sign class of the zero part.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SeriesTriple {
    group: SeriesGroup,
    n: u32,
    g0_label: String,
    g0_rank: u32,
    minus: Symbol,
    plus: Symbol,
    s0_sign: Sign,
}

impl SeriesTriple {
    pub fn new(
        group: SeriesGroup,
        g0_label: impl Into<String>,
        g0_rank: u32,
        minus: Symbol,
        plus: Symbol,
        s0_sign: Sign,
    ) -> Result<SeriesTriple, Error> {
        let (mk, pk) = group.part_kinds();
        if !class_ok(mk, &minus) {
            return Err(Error::DefectClass {
                symbol: minus.to_string(),
                defect: minus.defect(),
            });
        }
        if !class_ok(pk, &plus) {
            return Err(Error::DefectClass {
                symbol: plus.to_string(),
                defect: plus.defect(),
            });
        }
        let n = g0_rank + minus.rank() + plus.rank();
        Ok(SeriesTriple {
            group,
            n,
            g0_label: g0_label.into(),
            g0_rank,
            minus,
            plus,
            s0_sign,
        })
    }

    pub fn group(&self) -> SeriesGroup {
        self.group
    }

    /// Total rank: the zero-part rank plus the ranks of both part symbols.
    pub fn total_rank(&self) -> u32 {
        self.n
    }

    pub fn g0_label(&self) -> &str {
        &self.g0_label
    }

    pub fn g0_rank(&self) -> u32 {
        self.g0_rank
    }

    pub fn minus(&self) -> &Symbol {
        &self.minus
    }

    pub fn plus(&self) -> &Symbol {
        &self.plus
    }

    pub fn s0_sign(&self) -> Sign {
        self.s0_sign
    }
}

impl fmt::Display for SeriesTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[n={}, g0={}({}), minus={}, plus={}]",
            self.group, self.n, self.g0_label, self.g0_rank, self.minus, self.plus
        )
    }
}

impl fmt::Debug for SeriesTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Swap the minus and plus parts and flip the zero-part sign class. Defined
/// for the even orthogonal and odd special orthogonal groups only.
pub fn bar(t: &SeriesTriple) -> Result<SeriesTriple, Error> {
    match t.group {
        SeriesGroup::Opm | SeriesGroup::SOodd => Ok(SeriesTriple {
            minus: t.plus.clone(),
            plus: t.minus.clone(),
            s0_sign: t.s0_sign.flip(),
            ..t.clone()
        }),
        SeriesGroup::Sp => Err(Error::Internal(
            "bar is not defined on symplectic triples".into(),
        )),
    }
}

/// Transpose both part symbols. Defined for even orthogonal triples only.
pub fn transpose_x(t: &SeriesTriple) -> Result<SeriesTriple, Error> {
    match t.group {
        SeriesGroup::Opm => Ok(SeriesTriple {
            minus: t.minus.transpose(),
            plus: t.plus.transpose(),
            ..t.clone()
        }),
        _ => Err(Error::Internal(
            "transpose is defined on even orthogonal triples only".into(),
        )),
    }
}

/// Which basis the unipotent occurrence test runs in. The two variants are
/// independent code paths whose agreement is the content of the equality
/// being verified.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OccurrenceBasis {
    Irreducible,
    Almost,
}

/// Whether the unipotent pair occurs in the Weil decomposition, tested in
/// the requested basis: membership in the relation for the irreducible
/// variant, a nonzero transformed coefficient for the almost variant.
pub fn unipotent_occurs(sp: &Symbol, o: &Symbol, basis: OccurrenceBasis) -> Result<bool, Error> {
    match basis {
        OccurrenceBasis::Irreducible => Ok(in_relation(sp, o)?.is_some()),
        OccurrenceBasis::Almost => {
            let (z, _) = family_of(sp)?;
            let (zp, _) = family_of(o)?;
            let fam = Family::new(z);
            let fam_p = Family::new(zp);
            let block = omega_block(&fam, &fam_p, Basis::Almost, None);
            let i = fam.index_of_symbol(sp).expect("member of its own family");
            let j = fam_p.index_of_symbol(o).expect("member of its own family");
            Ok(!block.coeff(i, j).is_zero())
        }
    }
}

/// Occurrence of a symplectic triple against an even orthogonal triple: the
/// zero parts and sign classes match, the minus parts are equal, and the
/// plus parts are related unipotently.
pub fn occurs_even(
    t: &SeriesTriple,
    t_p: &SeriesTriple,
    basis: OccurrenceBasis,
) -> Result<bool, Error> {
    if t.group != SeriesGroup::Sp || t_p.group != SeriesGroup::Opm {
        return Err(Error::Internal(
            "occurs_even expects (sp, o) triples".into(),
        ));
    }
    Ok(t.g0_label == t_p.g0_label
        && t.g0_rank == t_p.g0_rank
        && t.s0_sign == t_p.s0_sign
        && t.minus == t_p.minus
        && unipotent_occurs(&t.plus, &t_p.plus, basis)?)
}

/// Occurrence of a symplectic triple against an odd special orthogonal
/// triple: zero parts match with opposite sign class, the symplectic plus
/// part equals the right-hand minus part, and the left minus part pairs
/// unipotently with the right plus part.
pub fn occurs_odd(
    t: &SeriesTriple,
    t_p: &SeriesTriple,
    basis: OccurrenceBasis,
) -> Result<bool, Error> {
    if t.group != SeriesGroup::Sp || t_p.group != SeriesGroup::SOodd {
        return Err(Error::Internal(
            "occurs_odd expects (sp, so-odd) triples".into(),
        ));
    }
    Ok(t.g0_label == t_p.g0_label
        && t.g0_rank == t_p.g0_rank
        && t.s0_sign != t_p.s0_sign
        && t.plus == t_p.minus
        && unipotent_occurs(&t_p.plus, &t.minus, basis)?)
}

fn first_occurrence_in(
    lam: &Symbol,
    target: GroupKind,
    basis: OccurrenceBasis,
) -> Result<(u32, Symbol), Error> {
    let probe = |cand: &Symbol| -> Result<bool, Error> {
        match target {
            GroupKind::Opm => unipotent_occurs(lam, cand, basis),
            GroupKind::Sp => unipotent_occurs(cand, lam, basis),
        }
    };
    let cap = lam.rank() + lam.len() as u32;
    for nprime in 0..=cap {
        for cand in group_symbols(target, nprime) {
            if probe(&cand)? {
                return Ok((nprime, cand));
            }
        }
    }
    Err(Error::ScanCapExceeded(cap))
}

/// A computed theta rank with its witness: the companion description, the
/// companion rank parameter, and the partner symbol of the unipotent part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRank {
    pub rank: u32,
    pub companion: String,
    pub k: u32,
    pub partner: Symbol,
}

/// The minimal companion size at which the triple (or a member of its
/// defining involution orbit) occurs, scanning companions in increasing
/// order with the requested occurrence basis.
pub fn theta_rank(t: &SeriesTriple, basis: OccurrenceBasis) -> Result<ThetaRank, Error> {
    match t.group {
        SeriesGroup::Sp => {
            let (ke, partner_e) = first_occurrence_in(&t.plus, GroupKind::Opm, basis)?;
            let even_k = t.g0_rank + t.minus.rank() + ke;
            let (ko, partner_o) = first_occurrence_in(&t.minus, GroupKind::Sp, basis)?;
            let odd_k = t.g0_rank + t.plus.rank() + ko;
            let even = ThetaRank {
                rank: 2 * even_k,
                companion: format!("o({})", 2 * even_k),
                k: even_k,
                partner: partner_e,
            };
            let odd = ThetaRank {
                rank: 2 * odd_k + 1,
                companion: format!("so({})", 2 * odd_k + 1),
                k: odd_k,
                partner: partner_o,
            };
            Ok(if even.rank <= odd.rank { even } else { odd })
        }
        SeriesGroup::Opm => {
            let tb = bar(t)?;
            let tt = transpose_x(t)?;
            let tbt = transpose_x(&tb)?;
            let mut best: Option<ThetaRank> = None;
            for u in [t.clone(), tb, tt, tbt] {
                let (kp, partner) = first_occurrence_in(&u.plus, GroupKind::Sp, basis)?;
                let k = u.g0_rank + u.minus.rank() + kp;
                let cand = ThetaRank {
                    rank: 2 * k,
                    companion: format!("sp({})", 2 * k),
                    k,
                    partner,
                };
                if best.as_ref().is_none_or(|b| cand.rank < b.rank) {
                    best = Some(cand);
                }
            }
            Ok(best.expect("orbit is nonempty"))
        }
        SeriesGroup::SOodd => {
            let tb = bar(t)?;
            let mut best: Option<ThetaRank> = None;
            for u in [t.clone(), tb] {
                let (kp, partner) = first_occurrence_in(&u.plus, GroupKind::Opm, basis)?;
                let k = u.g0_rank + u.minus.rank() + kp;
                let cand = ThetaRank {
                    rank: 2 * k,
                    companion: format!("sp({})", 2 * k),
                    k,
                    partner,
                };
                if best.as_ref().is_none_or(|b| cand.rank < b.rank) {
                    best = Some(cand);
                }
            }
            Ok(best.expect("orbit is nonempty"))
        }
    }
}

/// A layout of series-level Weil vectors over product bases: the zero-part
/// factor, the shared diagonal part rank, and the coupled part ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesLayout {
    /// For the (symplectic, even orthogonal) pair: a diagonal orthogonal
    /// minus part of rank `minus_rank` and coupled plus parts of ranks
    /// `(plus_rank_left, plus_rank_right)`.
    EvenPair {
        g0_label: String,
        g0_rank: u32,
        minus_rank: u32,
        plus_rank_left: u32,
        plus_rank_right: u32,
    },
    /// For the (symplectic, odd special orthogonal) pair: coupled minus
    /// parts of ranks `(minus_rank_left, minus_rank_right)` joined by the
    /// transposed relation, and a diagonal symplectic plus part.
    OddPair {
        g0_label: String,
        g0_rank: u32,
        minus_rank_left: u32,
        minus_rank_right: u32,
        plus_rank: u32,
    },
}

/// A part-symbol pair indexing one side of a series-level product vector.
pub type TripleKey = (Symbol, Symbol);

/// A sparse exact vector over pairs of (minus, plus) part symbols, one basis
/// tag for all slots. The opaque zero-part factor is diagonal and carried by
/// the layout, not the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPairVector {
    pub basis: Basis,
    pub coeffs: BTreeMap<(TripleKey, TripleKey), Scalar>,
}

impl SeriesPairVector {
    fn zero(basis: Basis) -> SeriesPairVector {
        SeriesPairVector {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    fn add(&mut self, key: (TripleKey, TripleKey), c: Scalar) {
        let cur = self.coeffs.get(&key).copied().unwrap_or(Scalar::ZERO) + c;
        if cur.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, cur);
        }
    }
}

fn transform_slot(s: &Symbol) -> Result<Vec<(Symbol, Scalar)>, Error> {
    let (z, _) = family_of(s)?;
    let fam = Family::new(z);
    let i = fam.index_of_symbol(s).expect("member of its own family");
    Ok((0..fam.member_count())
        .map(|j| (fam.member_symbol(j).clone(), fourier_entry(&fam, i, j)))
        .collect())
}

/// Assemble the series-level Weil vector of a layout in the requested
/// basis. In the irreducible basis the coefficients are 1 on the matched
/// triples; the almost basis is reached by transforming every part slot
/// through its family.
pub fn series_omega(layout: &SeriesLayout, basis: Basis) -> Result<SeriesPairVector, Error> {
    // support in the irreducible basis
    let mut support: Vec<(TripleKey, TripleKey)> = Vec::new();
    match layout {
        SeriesLayout::EvenPair {
            minus_rank,
            plus_rank_left,
            plus_rank_right,
            ..
        } => {
            let diag = group_symbols(GroupKind::Opm, *minus_rank);
            let left = group_symbols(GroupKind::Sp, *plus_rank_left);
            let right = group_symbols(GroupKind::Opm, *plus_rank_right);
            for d in &diag {
                for a in &left {
                    for b in &right {
                        if in_relation(a, b)?.is_some() {
                            support.push(((d.clone(), a.clone()), (d.clone(), b.clone())));
                        }
                    }
                }
            }
        }
        SeriesLayout::OddPair {
            minus_rank_left,
            minus_rank_right,
            plus_rank,
            ..
        } => {
            let left = group_symbols(GroupKind::Opm, *minus_rank_left);
            let right = group_symbols(GroupKind::Sp, *minus_rank_right);
            let diag = group_symbols(GroupKind::Sp, *plus_rank);
            for a in &left {
                for b in &right {
                    // the coupled pair sits in the transposed relation
                    if in_relation(b, a)?.is_some() {
                        for d in &diag {
                            support.push(((a.clone(), d.clone()), (b.clone(), d.clone())));
                        }
                    }
                }
            }
        }
    }

    let mut out = SeriesPairVector::zero(basis);
    match basis {
        Basis::Irreducible => {
            for key in support {
                out.add(key, Scalar::ONE);
            }
        }
        Basis::Almost => {
            for ((lm, lp), (rm, rp)) in support {
                let tl_m = transform_slot(&lm)?;
                let tl_p = transform_slot(&lp)?;
                let tr_m = transform_slot(&rm)?;
                let tr_p = transform_slot(&rp)?;
                for (am, cm) in &tl_m {
                    for (ap, cp) in &tl_p {
                        for (bm, dm) in &tr_m {
                            for (bp, dp) in &tr_p {
                                out.add(
                                    ((am.clone(), ap.clone()), (bm.clone(), bp.clone())),
                                    *cm * *cp * *dm * *dp,
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All triples of the group with the given total rank, over one fixed
/// zero-part label and sign.
pub fn enumerate_triples(group: SeriesGroup, n: u32) -> Vec<SeriesTriple> {
    let (mk, pk) = group.part_kinds();
    let mut out = Vec::new();
    for minus_rank in 0..=n {
        for plus_rank in 0..=(n - minus_rank) {
            let g0_rank = n - minus_rank - plus_rank;
            for minus in group_symbols(mk, minus_rank) {
                for plus in group_symbols(pk, plus_rank) {
                    out.push(
                        SeriesTriple::new(group, "g0", g0_rank, minus.clone(), plus, Sign::Pos)
                            .expect("classes match by construction"),
                    );
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{to_irreducible, ClassVector};

    fn sym(s: &str) -> Symbol {
        s.parse().unwrap()
    }

    fn sp_triple(g0_rank: u32, minus: &str, plus: &str) -> SeriesTriple {
        SeriesTriple::new(
            SeriesGroup::Sp,
            "g0",
            g0_rank,
            sym(minus),
            sym(plus),
            Sign::Pos,
        )
        .unwrap()
    }

    #[test]
    fn constructor_checks_classes() {
        assert!(
            SeriesTriple::new(SeriesGroup::Sp, "g0", 0, sym("1;0"), sym("2;-"), Sign::Pos).is_ok()
        );
        // minus part of a symplectic triple must have even defect
        assert!(
            SeriesTriple::new(SeriesGroup::Sp, "g0", 0, sym("2;-"), sym("2;-"), Sign::Pos).is_err()
        );
        let t = sp_triple(1, "1;0", "2;-");
        assert_eq!(t.total_rank(), 4);
    }

    #[test]
    fn bar_is_an_involution_and_flips_sign() {
        let t = SeriesTriple::new(
            SeriesGroup::SOodd,
            "g0",
            0,
            sym("2;-"),
            sym("0;-"),
            Sign::Pos,
        )
        .unwrap();
        let tb = bar(&t).unwrap();
        assert_eq!(tb.minus(), &sym("0;-"));
        assert_eq!(tb.plus(), &sym("2;-"));
        assert_eq!(tb.s0_sign(), Sign::Neg);
        assert_eq!(bar(&tb).unwrap(), t);
        assert_eq!(tb.total_rank(), t.total_rank());
        // bar is undefined on the symplectic side
        assert!(bar(&sp_triple(0, "-;-", "0;-")).is_err());
    }

    #[test]
    fn transpose_is_an_involution() {
        let t = SeriesTriple::new(
            SeriesGroup::Opm,
            "g0",
            0,
            sym("1;0"),
            sym("-;1,0"),
            Sign::Pos,
        )
        .unwrap();
        let tt = transpose_x(&t).unwrap();
        assert_eq!(tt.minus(), &sym("0;1"));
        assert_eq!(tt.plus(), &sym("1,0;-"));
        assert_eq!(transpose_x(&tt).unwrap(), t);
        // a degenerate part is fixed
        let d = SeriesTriple::new(SeriesGroup::Opm, "g0", 0, sym("1;1"), sym("-;-"), Sign::Pos)
            .unwrap();
        assert_eq!(transpose_x(&d).unwrap().minus(), &sym("1;1"));
        // bar and transpose commute on even orthogonal triples
        let ab = transpose_x(&bar(&t).unwrap()).unwrap();
        let ba = bar(&transpose_x(&t).unwrap()).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn occurrence_predicates() {
        // fully unipotent triples reduce to the symbol relation
        let t = sp_triple(0, "-;-", "2;-");
        let u = SeriesTriple::new(SeriesGroup::Opm, "g0", 0, sym("-;-"), sym("1;0"), Sign::Pos)
            .unwrap();
        assert!(occurs_even(&t, &u, OccurrenceBasis::Irreducible).unwrap());
        assert!(occurs_even(&t, &u, OccurrenceBasis::Almost).unwrap());

        // mismatched zero parts block occurrence
        let w = SeriesTriple::new(
            SeriesGroup::Opm,
            "other",
            0,
            sym("-;-"),
            sym("1;0"),
            Sign::Pos,
        )
        .unwrap();
        assert!(!occurs_even(&t, &w, OccurrenceBasis::Irreducible).unwrap());

        // differing minus parts block occurrence
        let v = SeriesTriple::new(SeriesGroup::Opm, "g0", 0, sym("1;1"), sym("1;0"), Sign::Pos)
            .unwrap();
        assert!(!occurs_even(
            &sp_triple(0, "-;-", "2;-"),
            &v,
            OccurrenceBasis::Irreducible
        )
        .unwrap());
    }

    #[test]
    fn odd_occurrence_needs_sign_flip_and_matched_parts() {
        // pairing the four-member rank-2 minus family against the trivial
        // odd group: the two identity-type minus parts occur, the others not
        let so = SeriesTriple::new(
            SeriesGroup::SOodd,
            "g0",
            0,
            sym("0;-"),
            sym("0;-"),
            Sign::Neg,
        )
        .unwrap();
        for (minus, expect) in [
            ("2;0", true),
            ("-;2,0", true),
            ("0;2", false),
            ("2,0;-", false),
        ] {
            let t = sp_triple(0, minus, "0;-");
            assert_eq!(
                occurs_odd(&t, &so, OccurrenceBasis::Irreducible).unwrap(),
                expect,
                "minus = {}",
                minus
            );
            assert_eq!(
                occurs_odd(&t, &so, OccurrenceBasis::Almost).unwrap(),
                expect,
                "minus = {} (almost)",
                minus
            );
        }
        // without the sign flip nothing occurs
        let so_pos = SeriesTriple::new(
            SeriesGroup::SOodd,
            "g0",
            0,
            sym("0;-"),
            sym("0;-"),
            Sign::Pos,
        )
        .unwrap();
        assert!(!occurs_odd(
            &sp_triple(0, "2;0", "0;-"),
            &so_pos,
            OccurrenceBasis::Irreducible
        )
        .unwrap());
    }

    #[test]
    fn almost_sum_equals_irreducible_sum_in_the_four_member_family() {
        // R at (2;0) plus R at (-;2,0) equals rho at the same two members
        let fam = Family::new(family_of(&sym("2;0")).unwrap().0);
        let i1 = fam.index_of_symbol(&sym("2;0")).unwrap();
        let i3 = fam.index_of_symbol(&sym("-;2,0")).unwrap();
        let mut v = ClassVector::zero(fam.clone(), Basis::Almost);
        v.add_coeff(i1, Scalar::ONE);
        v.add_coeff(i3, Scalar::ONE);
        let in_rho = to_irreducible(&v).unwrap();
        assert_eq!(in_rho.coeff(i1), Scalar::ONE);
        assert_eq!(in_rho.coeff(i3), Scalar::ONE);
        assert_eq!(in_rho.coeffs().len(), 2);
    }

    #[test]
    fn theta_rank_examples() {
        // trivial-character plus part occurs already against rank 0
        for n in 1..=3u32 {
            let plus = Symbol::new(vec![n], vec![]).unwrap();
            let t = SeriesTriple::new(SeriesGroup::Sp, "g0", 0, Symbol::empty(), plus, Sign::Pos)
                .unwrap();
            let r = theta_rank(&t, OccurrenceBasis::Irreducible).unwrap();
            assert_eq!(r.rank, 0, "n = {}", n);
        }
        // the rank-2 Steinberg-type symbol first occurs against o(4)
        let t = sp_triple(0, "-;-", "2,1,0;2,1");
        let r = theta_rank(&t, OccurrenceBasis::Irreducible).unwrap();
        assert_eq!(r.rank, 4);
        assert_eq!(r.companion, "o(4)");
    }

    #[test]
    fn theta_rank_is_orbit_invariant() {
        for t in enumerate_triples(SeriesGroup::Opm, 2) {
            let r = theta_rank(&t, OccurrenceBasis::Irreducible).unwrap().rank;
            let rb = theta_rank(&bar(&t).unwrap(), OccurrenceBasis::Irreducible)
                .unwrap()
                .rank;
            let rt = theta_rank(&transpose_x(&t).unwrap(), OccurrenceBasis::Irreducible)
                .unwrap()
                .rank;
            assert_eq!(r, rb);
            assert_eq!(r, rt);
        }
        for t in enumerate_triples(SeriesGroup::SOodd, 2) {
            let r = theta_rank(&t, OccurrenceBasis::Irreducible).unwrap().rank;
            let rb = theta_rank(&bar(&t).unwrap(), OccurrenceBasis::Irreducible)
                .unwrap()
                .rank;
            assert_eq!(r, rb);
        }
    }

    #[test]
    fn theta_rank_shrinks_when_parts_shrink() {
        // replacing a part by the rank-zero symbol of its class never
        // increases the rank
        for t in enumerate_triples(SeriesGroup::Sp, 3) {
            let r = theta_rank(&t, OccurrenceBasis::Irreducible).unwrap().rank;
            let smaller = SeriesTriple::new(
                SeriesGroup::Sp,
                t.g0_label().to_string(),
                t.g0_rank(),
                t.minus().clone(),
                sym("0;-"),
                t.s0_sign(),
            )
            .unwrap();
            let rs = theta_rank(&smaller, OccurrenceBasis::Irreducible)
                .unwrap()
                .rank;
            assert!(rs <= r, "{} -> {} grew from {} to {}", t, smaller, r, rs);
            let no_minus = SeriesTriple::new(
                SeriesGroup::Sp,
                t.g0_label().to_string(),
                t.g0_rank(),
                Symbol::empty(),
                t.plus().clone(),
                t.s0_sign(),
            )
            .unwrap();
            let rm = theta_rank(&no_minus, OccurrenceBasis::Irreducible)
                .unwrap()
                .rank;
            assert!(rm <= r, "{} -> {} grew from {} to {}", t, no_minus, r, rm);
        }
    }

    #[test]
    fn series_omega_trivial_layout_reduces_to_unipotent() {
        let layout = SeriesLayout::EvenPair {
            g0_label: "g0".into(),
            g0_rank: 0,
            minus_rank: 0,
            plus_rank_left: 2,
            plus_rank_right: 1,
        };
        let rho = series_omega(&layout, Basis::Irreducible).unwrap();
        // six pairs at ranks (2, 1), all tensored with the empty minus part
        assert_eq!(rho.coeffs.len(), 6);
        for ((lm, _), (rm, _)) in rho.coeffs.keys() {
            assert_eq!(lm, &Symbol::empty());
            assert_eq!(rm, &Symbol::empty());
        }
        let almost = series_omega(&layout, Basis::Almost).unwrap();
        assert_eq!(rho.coeffs, almost.coeffs);
    }

    #[test]
    fn series_omega_even_with_diagonal_minus() {
        let layout = SeriesLayout::EvenPair {
            g0_label: "g0".into(),
            g0_rank: 1,
            minus_rank: 2,
            plus_rank_left: 1,
            plus_rank_right: 0,
        };
        let rho = series_omega(&layout, Basis::Irreducible).unwrap();
        let almost = series_omega(&layout, Basis::Almost).unwrap();
        assert_eq!(rho.coeffs, almost.coeffs);
        // the diagonal runs over all minus symbols of rank 2
        for ((lm, _), (rm, _)) in rho.coeffs.keys() {
            assert_eq!(lm, rm);
        }
    }

    #[test]
    fn series_omega_odd_pair_agrees_in_both_bases() {
        let layout = SeriesLayout::OddPair {
            g0_label: "g0".into(),
            g0_rank: 0,
            minus_rank_left: 1,
            minus_rank_right: 2,
            plus_rank: 1,
        };
        let rho = series_omega(&layout, Basis::Irreducible).unwrap();
        let almost = series_omega(&layout, Basis::Almost).unwrap();
        assert_eq!(rho.coeffs, almost.coeffs);
        assert!(!rho.coeffs.is_empty());
    }
}
