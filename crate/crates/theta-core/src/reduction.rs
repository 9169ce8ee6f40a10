//! Constructive reduction of a family-pair relation to a regular one.
//!
//! Each step locates the first pair set in the fixed scan order whose
//! members are identical pairs or core pairs, removes them, relabels the
//! remaining entries, and transports the two diagonal sums with a constant
//! in `{1, sqrt2, 2}`. Iterating shrinks the symbols until the relation is
//! regular, where an explicit renaming reduces to the staircase base cases.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::families::{Eps, Family, GroupKind, SpecialSymbol, Subset};
use crate::scalar::Scalar;
use crate::symbols::{Row, Symbol};
use crate::theta::{family_pairs, in_relation, is_regular, omega_block};
use crate::transform::{fourier_entry, Basis, PairVector};

/// Which side of the family pair a symbol pair is drawn from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    /// The symplectic-side special symbol.
    Left,
    /// The orthogonal-side special symbol.
    Right,
}

/// Classification of one candidate pair against the relation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairClass {
    /// Equal entries, one per row.
    Identical,
    /// A consecutive pair of singles whose flip lands in the relevant D-set.
    ConsecutiveCore,
    /// A consecutive pair of singles whose flip does not.
    ConsecutiveNoncore,
    /// Anything else.
    Neither,
    /// No pair at this scan position on this side.
    Absent,
}

impl PairClass {
    pub fn qualifies(self) -> bool {
        matches!(self, PairClass::Identical | PairClass::ConsecutiveCore)
    }

    pub fn is_core(self) -> bool {
        self == PairClass::ConsecutiveCore
    }
}

/// Case tag of a reduction step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepCase {
    I,
    II,
    III,
    /// The terminal renaming onto the staircase base case.
    Basic,
}

impl fmt::Display for StepCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepCase::I => write!(f, "I"),
            StepCase::II => write!(f, "II"),
            StepCase::III => write!(f, "III"),
            StepCase::Basic => write!(f, "basic"),
        }
    }
}

/// A finite relabeling of symbol entries, `(value, row) -> (value, row)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EntryMap {
    map: BTreeMap<(u32, Row), (u32, Row)>,
}

impl EntryMap {
    pub fn insert(&mut self, from: (u32, Row), to: (u32, Row)) {
        self.map.insert(from, to);
    }

    pub fn apply(&self, entry: (u32, Row)) -> Option<(u32, Row)> {
        self.map.get(&entry).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Push a member subset of the source family through to the target.
    pub fn map_subset(&self, src: &Family, dst: &Family, subset: Subset) -> Result<Subset, Error> {
        let mut out: Subset = 0;
        for (i, &(v, row)) in src.singles().iter().enumerate() {
            if subset & (1 << i) == 0 {
                continue;
            }
            let (nv, nrow) = self.apply((v, row)).ok_or_else(|| {
                Error::Internal(format!("entry ({}, {:?}) not in relabeling", v, row))
            })?;
            let j = dst
                .singles()
                .iter()
                .position(|&e| e == (nv, nrow))
                .ok_or_else(|| {
                    Error::Internal(format!(
                        "image entry ({}, {:?}) is not a single of {}",
                        nv,
                        nrow,
                        dst.special()
                    ))
                })?;
            out |= 1 << j;
        }
        Ok(out)
    }
}

impl fmt::Debug for EntryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.map.iter()).finish()
    }
}

/// The staircase special symbol of defect 1: rows `2m,2m-2,...,0` over
/// `2m-1,2m-3,...,1`.
pub fn basic_special(m: usize) -> SpecialSymbol {
    let top: Vec<u32> = (0..=m).map(|i| (2 * (m - i)) as u32).collect();
    let bottom: Vec<u32> = (1..=m).map(|i| (2 * (m - i) + 1) as u32).collect();
    SpecialSymbol::new(Symbol::new(top, bottom).unwrap()).unwrap()
}

/// The staircase special symbol of defect 0: rows `2m-1,2m-3,...,1` over
/// `2m-2,2m-4,...,0`.
pub fn basic_special_prime(m: usize) -> SpecialSymbol {
    let top: Vec<u32> = (1..=m).map(|i| (2 * (m - i) + 1) as u32).collect();
    let bottom: Vec<u32> = (1..=m).map(|i| (2 * (m - i)) as u32).collect();
    SpecialSymbol::new(Symbol::new(top, bottom).unwrap()).unwrap()
}

/// The base-case bijection from the defect-0 staircase family onto the
/// defect-1 staircase family: transpose and adjoin `2m` on the side fixed by
/// the defect class. Preserves the family pairing.
pub fn basic_theta(m: usize, lam_p: &Symbol) -> Result<Symbol, Error> {
    let fam_p = Family::new(basic_special_prime(m));
    fam_p.subset_of_lambda(lam_p)?;
    let row = match lam_p.defect().rem_euclid(4) {
        0 => Row::Top,
        2 => Row::Bottom,
        _ => unreachable!("defect-0 family members have even defect"),
    };
    let image = lam_p.transpose().insert(2 * m as u32, row)?;
    debug_assert!(Family::new(basic_special(m))
        .index_of_symbol(&image)
        .is_some());
    Ok(image)
}

/// The two base-case injections from the defect-1 staircase family into the
/// next defect-0 staircase family: transpose and adjoin `2m+1` on the top
/// (plus) or bottom (minus).
pub fn basic_theta_pm(m: usize, eps: Eps, lam: &Symbol) -> Result<Symbol, Error> {
    let fam = Family::new(basic_special(m));
    fam.subset_of_lambda(lam)?;
    let row = match eps {
        Eps::Plus => Row::Top,
        Eps::Minus => Row::Bottom,
    };
    let image = lam.transpose().insert((2 * m + 1) as u32, row)?.reduce();
    debug_assert!(Family::new(basic_special_prime(m + 1))
        .index_of_symbol(&image)
        .is_some());
    Ok(image)
}

fn pair_in_singles(z: &SpecialSymbol, top_value: u32, bottom_value: u32) -> bool {
    let singles = z.singles();
    singles.contains(top_value, Row::Top) && singles.contains(bottom_value, Row::Bottom)
}

fn pair_consecutive(z: &SpecialSymbol, x: u32, y: u32) -> bool {
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    z.symbol()
        .top()
        .iter()
        .chain(z.symbol().bottom().iter())
        .all(|&v| v <= lo || v >= hi)
}

/// Classify a candidate pair on one side of the family pair. On the left the
/// pair is `(a_k; b_l)` and its flip is tested against the D-set anchored at
/// `Z'`; on the right it is `(c_l'; d_k')` tested against the plus D-set
/// anchored at `Z`.
pub fn classify_pair(
    z: &SpecialSymbol,
    zp: &SpecialSymbol,
    pair: (u32, u32),
    side: Side,
) -> PairClass {
    let (own, other_special) = match side {
        Side::Left => (z, zp),
        Side::Right => (zp, z),
    };
    let (top_v, bottom_v) = pair;
    if top_v == bottom_v {
        return PairClass::Identical;
    }
    if !pair_in_singles(own, top_v, bottom_v) || !pair_consecutive(own, top_v, bottom_v) {
        return PairClass::Neither;
    }
    let fam = Family::new(own.clone());
    let mut mask: Subset = 0;
    for (i, &e) in fam.singles().iter().enumerate() {
        if e == (top_v, Row::Top) || e == (bottom_v, Row::Bottom) {
            mask |= 1 << i;
        }
    }
    let flipped = fam
        .lambda_of_subset(mask)
        .expect("even flip of two singles");
    let core = match side {
        Side::Left => {
            in_relation(&flipped, other_special.symbol())
                .expect("family members have valid defects")
                == Some(Eps::Plus)
        }
        Side::Right => {
            in_relation(other_special.symbol(), &flipped)
                .expect("family members have valid defects")
                == Some(Eps::Plus)
        }
    };
    if core {
        PairClass::ConsecutiveCore
    } else {
        PairClass::ConsecutiveNoncore
    }
}

/// The first qualifying scan position, with the pair data needed to build
/// the step.
#[derive(Clone, Debug)]
pub struct ReductionSite {
    pub position: usize,
    /// 1-based indices of `(a_k; b_l)`; the pair itself may be absent.
    pub k: usize,
    pub l: usize,
    /// 1-based indices of `(c_l'; d_k')`.
    pub lp: usize,
    pub kp: usize,
    pub psi: Option<(u32, u32)>,
    pub psi_p: Option<(u32, u32)>,
    pub psi_class: PairClass,
    pub psi_p_class: PairClass,
    pub case: StepCase,
}

/// Scan the interleaved pair sets in the printed order and return the first
/// position where at least one side qualifies. `None` means the relation is
/// already regular.
pub fn find_reduction_site(z: &SpecialSymbol, zp: &SpecialSymbol) -> Option<ReductionSite> {
    let m = z.symbol().size().1;
    let mp = zp.symbol().size().0;
    let a = z.symbol().top();
    let b = z.symbol().bottom();
    let c = zp.symbol().top();
    let d = zp.symbol().bottom();

    for p in 1..=(2 * m.max(mp) + 1) {
        let t = p.div_ceil(2) as i64;
        let (ki, li, lpi, kpi) = if p % 2 == 1 {
            (
                m as i64 + 2 - t,
                m as i64 + 1 - t,
                mp as i64 + 1 - t,
                mp as i64 + 1 - t,
            )
        } else {
            (
                m as i64 + 1 - t,
                m as i64 + 1 - t,
                mp as i64 + 1 - t,
                mp as i64 - t,
            )
        };
        // 1-based indices; a side with an out-of-range index has no pair at
        // this position (the empty-pair convention at the boundary)
        let psi = if ki >= 1 && ki <= m as i64 + 1 && li >= 1 && li <= m as i64 {
            Some((a[(ki - 1) as usize], b[(li - 1) as usize]))
        } else {
            None
        };
        let psi_p = if lpi >= 1 && lpi <= mp as i64 && kpi >= 1 && kpi <= mp as i64 {
            Some((c[(lpi - 1) as usize], d[(kpi - 1) as usize]))
        } else {
            None
        };
        let (k, l, lp, kp) = (
            ki.max(0) as usize,
            li.max(0) as usize,
            lpi.max(0) as usize,
            kpi.max(0) as usize,
        );
        if psi.is_none() && psi_p.is_none() {
            break;
        }
        let psi_class = match psi {
            Some(pair) => classify_pair(z, zp, pair, Side::Left),
            None => PairClass::Absent,
        };
        let psi_p_class = match psi_p {
            Some(pair) => classify_pair(z, zp, pair, Side::Right),
            None => PairClass::Absent,
        };
        let case = match (psi_class.qualifies(), psi_p_class.qualifies()) {
            (true, true) => StepCase::I,
            (true, false) => StepCase::II,
            (false, true) => StepCase::III,
            (false, false) => continue,
        };
        return Some(ReductionSite {
            position: p,
            k,
            l,
            lp,
            kp,
            psi,
            psi_p,
            psi_class,
            psi_p_class,
            case,
        });
    }
    None
}

/// One reduction step: the removed pairs, the shrunken special symbols, the
/// entry relabelings and the transported constant.
#[derive(Clone, Debug)]
pub struct ReductionStep {
    pub case: StepCase,
    pub psi: Option<(u32, u32)>,
    pub psi_p: Option<(u32, u32)>,
    pub psi_core: bool,
    pub psi_p_core: bool,
    pub z_next: SpecialSymbol,
    pub zp_next: SpecialSymbol,
    pub f: EntryMap,
    pub f_prime: EntryMap,
    pub constant: Scalar,
}

/// Build the step at the first qualifying site.
pub fn reduce_step(z: &SpecialSymbol, zp: &SpecialSymbol) -> Result<ReductionStep, Error> {
    let site = find_reduction_site(z, zp)
        .ok_or_else(|| Error::Internal("no reduction site: relation is regular".into()))?;
    build_step(z, zp, &site)
}

fn build_step(
    z: &SpecialSymbol,
    zp: &SpecialSymbol,
    site: &ReductionSite,
) -> Result<ReductionStep, Error> {
    let m = z.symbol().size().1;
    let mp = zp.symbol().size().0;
    let a = z.symbol().top();
    let b = z.symbol().bottom();
    let c = zp.symbol().top();
    let d = zp.symbol().bottom();
    let (k, l, lp, kp) = (site.k, site.l, site.lp, site.kp);

    // runtime check of the side conditions the construction relies on
    match site.case {
        StepCase::II => {
            if mp != m {
                return Err(Error::Internal(format!(
                    "case II requires equal pair counts, got m={} m'={}",
                    m, mp
                )));
            }
        }
        StepCase::III if mp != m + 1 => {
            return Err(Error::Internal(format!(
                "case III requires m'=m+1, got m={} m'={}",
                m, mp
            )));
        }
        _ => {}
    }

    let mut f = EntryMap::default();
    let mut f_prime = EntryMap::default();
    let (z_top, z_bot, zp_top, zp_bot): (Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>);

    match site.case {
        StepCase::I => {
            z_top = (1..=m + 1)
                .filter(|&i| i != k)
                .map(|i| if i < k { a[i - 1] - 1 } else { a[i - 1] })
                .collect();
            z_bot = (1..=m)
                .filter(|&j| j != l)
                .map(|j| if j < l { b[j - 1] - 1 } else { b[j - 1] })
                .collect();
            zp_top = (1..=mp)
                .filter(|&i| i != lp)
                .map(|i| if i < lp { c[i - 1] - 1 } else { c[i - 1] })
                .collect();
            zp_bot = (1..=mp)
                .filter(|&j| j != kp)
                .map(|j| if j < kp { d[j - 1] - 1 } else { d[j - 1] })
                .collect();
            for i in 1..=m + 1 {
                if i != k {
                    let v = a[i - 1];
                    f.insert((v, Row::Top), (if i < k { v - 1 } else { v }, Row::Top));
                }
            }
            for j in 1..=m {
                if j != l {
                    let v = b[j - 1];
                    f.insert(
                        (v, Row::Bottom),
                        (if j < l { v - 1 } else { v }, Row::Bottom),
                    );
                }
            }
            for i in 1..=mp {
                if i != lp {
                    let v = c[i - 1];
                    f_prime.insert((v, Row::Top), (if i < lp { v - 1 } else { v }, Row::Top));
                }
            }
            for j in 1..=mp {
                if j != kp {
                    let v = d[j - 1];
                    f_prime.insert(
                        (v, Row::Bottom),
                        (if j < kp { v - 1 } else { v }, Row::Bottom),
                    );
                }
            }
        }
        StepCase::II => {
            z_top = (1..k)
                .map(|i| a[i - 1] - 1)
                .chain((kp + 1..=mp).map(|j| d[j - 1]))
                .collect();
            z_bot = (1..l)
                .map(|j| b[j - 1] - 1)
                .chain((lp + 1..=mp).map(|i| c[i - 1]))
                .collect();
            zp_top = (1..=lp)
                .map(|i| c[i - 1])
                .chain((l + 1..=m).map(|j| b[j - 1]))
                .collect();
            zp_bot = (1..=kp)
                .map(|j| d[j - 1])
                .chain((k + 1..=m + 1).map(|i| a[i - 1]))
                .collect();
            for i in 1..=m + 1 {
                if i < k {
                    f.insert((a[i - 1], Row::Top), (a[i - 1] - 1, Row::Top));
                } else if i > k {
                    f.insert((a[i - 1], Row::Top), (d[i - 2], Row::Top));
                }
            }
            for j in 1..=m {
                if j < l {
                    f.insert((b[j - 1], Row::Bottom), (b[j - 1] - 1, Row::Bottom));
                } else if j > l {
                    f.insert((b[j - 1], Row::Bottom), (c[j - 1], Row::Bottom));
                }
            }
            for i in 1..=mp {
                let v = c[i - 1];
                f_prime.insert(
                    (v, Row::Top),
                    (if i <= lp { v } else { b[i - 1] }, Row::Top),
                );
            }
            for j in 1..=mp {
                let v = d[j - 1];
                f_prime.insert(
                    (v, Row::Bottom),
                    (if j <= kp { v } else { a[j] }, Row::Bottom),
                );
            }
        }
        StepCase::III => {
            z_top = (1..=k)
                .map(|i| a[i - 1])
                .chain((kp + 1..=mp).map(|j| d[j - 1]))
                .collect();
            z_bot = (1..=l)
                .map(|j| b[j - 1])
                .chain((lp + 1..=mp).map(|i| c[i - 1]))
                .collect();
            zp_top = (1..lp)
                .map(|i| c[i - 1] - 1)
                .chain((l + 1..=m).map(|j| b[j - 1]))
                .collect();
            zp_bot = (1..kp)
                .map(|j| d[j - 1] - 1)
                .chain((k + 1..=m + 1).map(|i| a[i - 1]))
                .collect();
            for i in 1..=m + 1 {
                let v = a[i - 1];
                f.insert((v, Row::Top), (if i <= k { v } else { d[i - 1] }, Row::Top));
            }
            for j in 1..=m {
                let v = b[j - 1];
                f.insert(
                    (v, Row::Bottom),
                    (if j <= l { v } else { c[j] }, Row::Bottom),
                );
            }
            for i in 1..=mp {
                if i < lp {
                    f_prime.insert((c[i - 1], Row::Top), (c[i - 1] - 1, Row::Top));
                } else if i > lp {
                    f_prime.insert((c[i - 1], Row::Top), (b[i - 2], Row::Top));
                }
            }
            for j in 1..=mp {
                if j < kp {
                    f_prime.insert((d[j - 1], Row::Bottom), (d[j - 1] - 1, Row::Bottom));
                } else if j > kp {
                    f_prime.insert((d[j - 1], Row::Bottom), (a[j - 1], Row::Bottom));
                }
            }
        }
        StepCase::Basic => return Err(Error::Internal("basic renaming is not a scan step".into())),
    }

    let z_next = SpecialSymbol::new(Symbol::new(z_top, z_bot)?)?;
    let zp_next = SpecialSymbol::new(Symbol::new(zp_top, zp_bot)?)?;
    if z_next.kind() != GroupKind::Sp || zp_next.kind() != GroupKind::Opm {
        return Err(Error::Internal("step produced wrong defects".into()));
    }
    // the degree drops by one on a side exactly when its pair is in the core
    if z_next.degree() != z.degree() - site.psi_class.is_core() as u32
        || zp_next.degree() != zp.degree() - site.psi_p_class.is_core() as u32
    {
        return Err(Error::Internal(
            "step changed a family degree unexpectedly".into(),
        ));
    }

    let cores = site.psi_class.is_core() as u32 + site.psi_p_class.is_core() as u32;
    let constant = match cores {
        0 => Scalar::ONE,
        1 => Scalar::SQRT2,
        _ => Scalar::TWO,
    };

    Ok(ReductionStep {
        case: site.case,
        psi: site.psi,
        psi_p: site.psi_p,
        psi_core: site.psi_class.is_core(),
        psi_p_core: site.psi_p_class.is_core(),
        z_next,
        zp_next,
        f,
        f_prime,
        constant,
    })
}

/// The lifted basis on one side of a step: identity when the removed pair is
/// not in the core, and the `1/sqrt2`-summed pairs over subsets avoiding the
/// core pair otherwise.
pub struct LiftedBasis {
    fam: Arc<Family>,
    psi_mask: Option<Subset>,
    reps: Vec<Subset>,
}

impl LiftedBasis {
    pub fn new(fam: Arc<Family>, core_pair: Option<(u32, u32)>) -> LiftedBasis {
        let psi_mask = core_pair.map(|(tv, bv)| {
            let mut mask: Subset = 0;
            for (i, &e) in fam.singles().iter().enumerate() {
                if e == (tv, Row::Top) || e == (bv, Row::Bottom) {
                    mask |= 1 << i;
                }
            }
            debug_assert_eq!(mask.count_ones(), 2, "core pair must be two singles");
            mask
        });
        let reps: Vec<Subset> = match psi_mask {
            None => fam.member_subsets().to_vec(),
            Some(mask) => fam
                .member_subsets()
                .iter()
                .copied()
                .filter(|m| m & mask == 0)
                .collect(),
        };
        LiftedBasis {
            fam,
            psi_mask,
            reps,
        }
    }

    pub fn family(&self) -> &Arc<Family> {
        &self.fam
    }

    pub fn reps(&self) -> &[Subset] {
        &self.reps
    }

    pub fn is_identity(&self) -> bool {
        self.psi_mask.is_none()
    }

    /// Member indices whose unit vectors enter the lifted vector at `rep`.
    pub fn components(&self, rep: Subset) -> Vec<usize> {
        match self.psi_mask {
            None => vec![self.fam.index_of_subset(rep).unwrap()],
            Some(mask) => vec![
                self.fam.index_of_subset(rep).unwrap(),
                self.fam.index_of_subset(rep | mask).unwrap(),
            ],
        }
    }

    /// The normalization of one lifted vector: 1 for the identity lift,
    /// `1/sqrt2` otherwise.
    pub fn weight(&self) -> Scalar {
        if self.psi_mask.is_none() {
            Scalar::ONE
        } else {
            Scalar::inv_sqrt2()
        }
    }

    /// Coefficients over the plain irreducible basis of the lifted vector at
    /// `rep`, sharing one unit of input coefficient.
    pub fn rho_coeffs(&self, rep: Subset) -> Vec<(usize, Scalar)> {
        self.components(rep)
            .into_iter()
            .map(|i| (i, self.weight()))
            .collect()
    }

    /// The lifted almost-character vector at `rep`, expanded over the plain
    /// irreducible basis.
    pub fn r_coeffs(&self, rep: Subset) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        for comp in self.components(rep) {
            for j in 0..self.fam.member_count() {
                let entry = out.entry(j).or_insert(Scalar::ZERO);
                *entry += self.weight() * fourier_entry(&self.fam, comp, j);
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Express a coefficient vector over the plain irreducible basis in the
    /// lifted basis; `None` when it lies outside the lifted span.
    pub fn express(&self, coeffs: &BTreeMap<usize, Scalar>) -> Option<BTreeMap<Subset, Scalar>> {
        let mut out = BTreeMap::new();
        let mut residual = coeffs.clone();
        for &rep in &self.reps {
            let comps = self.components(rep);
            let lead = residual.get(&comps[0]).copied().unwrap_or(Scalar::ZERO);
            if lead.is_zero() {
                continue;
            }
            // all components of one lifted vector must carry equal weight
            for &c in &comps {
                let got = residual.get(&c).copied().unwrap_or(Scalar::ZERO);
                if got != lead {
                    return None;
                }
                residual.remove(&c);
            }
            // lead = coefficient * weight, and weight is 1 or sqrt2/2, so
            // divide by multiplying with 1 or sqrt2
            let coefficient = if self.psi_mask.is_none() {
                lead
            } else {
                lead * Scalar::SQRT2
            };
            out.insert(rep, coefficient);
        }
        if residual.is_empty() {
            Some(out)
        } else {
            None
        }
    }
}

/// Exhaustively check the four step lemmas: membership transport, inner
/// product preservation on lifted members, transport of almost characters,
/// and the constant-`C` identity for both diagonal sums.
pub fn verify_step(
    z: &SpecialSymbol,
    zp: &SpecialSymbol,
    step: &ReductionStep,
) -> Result<bool, Error> {
    let fam = Family::new(z.clone());
    let fam_p = Family::new(zp.clone());
    let fam1 = Family::new(step.z_next.clone());
    let fam1_p = Family::new(step.zp_next.clone());

    let lift = LiftedBasis::new(fam.clone(), step.psi.filter(|_| step.psi_core));
    let lift_p = LiftedBasis::new(fam_p.clone(), step.psi_p.filter(|_| step.psi_p_core));

    // images of the lifted representatives under the relabelings
    let mut image: BTreeMap<Subset, usize> = BTreeMap::new();
    for &rep in lift.reps() {
        let mapped = step.f.map_subset(&fam, &fam1, rep)?;
        let idx = fam1
            .index_of_subset(mapped)
            .ok_or_else(|| Error::Internal("image subset not admissible".into()))?;
        image.insert(rep, idx);
    }
    let mut image_p: BTreeMap<Subset, usize> = BTreeMap::new();
    for &rep in lift_p.reps() {
        let mapped = step.f_prime.map_subset(&fam_p, &fam1_p, rep)?;
        let idx = fam1_p
            .index_of_subset(mapped)
            .ok_or_else(|| Error::Internal("image subset not admissible".into()))?;
        image_p.insert(rep, idx);
    }

    // (a) membership transport: the restricted relation matches the target
    // relation through the relabelings, sign included
    for &rep in lift.reps() {
        let lam = fam.member_symbol(fam.index_of_subset(rep).unwrap());
        let lam1 = fam1.member_symbol(image[&rep]);
        for &rep_p in lift_p.reps() {
            let mu = fam_p.member_symbol(fam_p.index_of_subset(rep_p).unwrap());
            let mu1 = fam1_p.member_symbol(image_p[&rep_p]);
            if in_relation(lam, mu)? != in_relation(lam1, mu1)? {
                return Ok(false);
            }
        }
    }

    // (b) inner products of lifted vectors against lifted almost characters
    // match the target family kernel
    for (lift_side, img, dst) in [(&lift, &image, &fam1), (&lift_p, &image_p, &fam1_p)] {
        for &r1 in lift_side.reps() {
            let rho1 = lift_side.rho_coeffs(r1);
            for &r2 in lift_side.reps() {
                let r_vec = lift_side.r_coeffs(r2);
                let mut got = Scalar::ZERO;
                for &(i, w) in &rho1 {
                    got += w * r_vec.get(&i).copied().unwrap_or(Scalar::ZERO);
                }
                let want = fourier_entry(dst, img[&r2], img[&r1]);
                if got != want {
                    return Ok(false);
                }
            }
        }
    }

    // (c) lifted almost characters transport to almost characters of the
    // shrunken family
    for (lift_side, img, dst) in [(&lift, &image, &fam1), (&lift_p, &image_p, &fam1_p)] {
        for &rep in lift_side.reps() {
            let r_vec = lift_side.r_coeffs(rep);
            let in_lifted = match lift_side.express(&r_vec) {
                Some(c) => c,
                None => return Ok(false),
            };
            // push through the relabeling and compare coefficientwise
            let mut transported: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (&r, &cval) in &in_lifted {
                transported.insert(img[&r], cval);
            }
            let target_row: BTreeMap<usize, Scalar> = (0..dst.member_count())
                .map(|j| (j, fourier_entry(dst, img[&rep], j)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            if transported != target_row {
                return Ok(false);
            }
        }
    }

    // (d) both diagonal sums factor through the lifted pairs with the step
    // constant
    let pairs1: Vec<(Subset, Subset)> = {
        let mut v = Vec::new();
        for &rep in lift.reps() {
            let lam = fam.member_symbol(fam.index_of_subset(rep).unwrap());
            for &rep_p in lift_p.reps() {
                let mu = fam_p.member_symbol(fam_p.index_of_subset(rep_p).unwrap());
                if in_relation(lam, mu)?.is_some() {
                    v.push((rep, rep_p));
                }
            }
        }
        v
    };

    let rho_sum = omega_block(&fam, &fam_p, Basis::Irreducible, None);
    let mut rho_built = PairVector::zero(
        fam.clone(),
        fam_p.clone(),
        Basis::Irreducible,
        Basis::Irreducible,
    );
    for &(rep, rep_p) in &pairs1 {
        for (i, wi) in lift.rho_coeffs(rep) {
            for (j, wj) in lift_p.rho_coeffs(rep_p) {
                rho_built.add_coeff(i, j, step.constant * wi * wj);
            }
        }
    }
    if rho_built != rho_sum {
        return Ok(false);
    }

    let r_sum = {
        // sum of R (x) R over the relation, expanded in the irreducible pair
        // basis: transform the indicator from the almost side
        let mut v = PairVector::zero(fam.clone(), fam_p.clone(), Basis::Almost, Basis::Almost);
        for (i, j, _) in family_pairs(&fam, &fam_p) {
            v.add_coeff(i, j, Scalar::ONE);
        }
        v.transform_both()
    };
    let mut r_built = PairVector::zero(
        fam.clone(),
        fam_p.clone(),
        Basis::Irreducible,
        Basis::Irreducible,
    );
    for &(rep, rep_p) in &pairs1 {
        let ri = lift.r_coeffs(rep);
        let rj = lift_p.r_coeffs(rep_p);
        for (&i, &wi) in &ri {
            for (&j, &wj) in &rj {
                r_built.add_coeff(i, j, step.constant * wi * wj);
            }
        }
    }
    if r_built != r_sum {
        return Ok(false);
    }

    Ok(true)
}

/// The terminal renaming of a regular pair onto the staircase base case.
#[derive(Clone, Debug)]
pub struct BasicCertificate {
    pub m: usize,
    pub m_prime: usize,
    pub f: EntryMap,
    pub f_prime: EntryMap,
}

/// Build and verify the renaming of Lemma-style regular pairs onto
/// `(Z_(m), Z'_(m'))`, checking that the relation transports onto the graph
/// of the base-case bijections.
pub fn certify_regular(z: &SpecialSymbol, zp: &SpecialSymbol) -> Result<BasicCertificate, Error> {
    if !is_regular(z, zp) {
        return Err(Error::Internal(format!("({}, {}) is not regular", z, zp)));
    }
    let m = z.symbol().size().1;
    let mp = zp.symbol().size().0;
    if mp != m && mp != m + 1 {
        return Err(Error::Internal(format!(
            "regular nonempty relation needs m' in {{m, m+1}}, got ({}, {})",
            m, mp
        )));
    }
    let mut f = EntryMap::default();
    for (i, &v) in z.symbol().top().iter().enumerate() {
        f.insert((v, Row::Top), ((2 * (m - i)) as u32, Row::Top));
    }
    for (j, &v) in z.symbol().bottom().iter().enumerate() {
        f.insert(
            (v, Row::Bottom),
            ((2 * (m - 1 - j) + 1) as u32, Row::Bottom),
        );
    }
    let mut f_prime = EntryMap::default();
    for (i, &v) in zp.symbol().top().iter().enumerate() {
        f_prime.insert((v, Row::Top), ((2 * (mp - 1 - i) + 1) as u32, Row::Top));
    }
    for (j, &v) in zp.symbol().bottom().iter().enumerate() {
        f_prime.insert((v, Row::Bottom), ((2 * (mp - 1 - j)) as u32, Row::Bottom));
    }

    let fam = Family::new(z.clone());
    let fam_p = Family::new(zp.clone());
    let basic = Family::new(basic_special(m));
    let basic_p = Family::new(basic_special_prime(mp));

    for (i, lam) in fam.member_symbols().iter().enumerate() {
        let mi = f.map_subset(&fam, &basic, fam.subset_at(i))?;
        let lam_b = basic.lambda_of_subset(mi)?;
        for (j, mu) in fam_p.member_symbols().iter().enumerate() {
            let mj = f_prime.map_subset(&fam_p, &basic_p, fam_p.subset_at(j))?;
            let mu_b = basic_p.lambda_of_subset(mj)?;
            // relation transports, sign included
            if in_relation(lam, mu)? != in_relation(&lam_b, &mu_b)? {
                return Err(Error::Internal(
                    "regular renaming broke the relation".into(),
                ));
            }
            // and lands on the graph of the base-case bijections
            let expected = if mp == m {
                basic_theta(m, &mu_b)? == lam_b
            } else {
                basic_theta_pm(m, Eps::Plus, &lam_b)? == mu_b
                    || basic_theta_pm(m, Eps::Minus, &lam_b)? == mu_b
            };
            if in_relation(&lam_b, &mu_b)?.is_some() != expected {
                return Err(Error::Internal(
                    "base-case relation is not the bijection graph".into(),
                ));
            }
            // family pairings agree through the renamings
            for (i2, _) in fam.member_symbols().iter().enumerate() {
                let mi2 = f.map_subset(&fam, &basic, fam.subset_at(i2))?;
                if fam.pairing(fam.subset_at(i), fam.subset_at(i2)) != basic.pairing(mi, mi2) {
                    return Err(Error::Internal("renaming broke the pairing".into()));
                }
            }
        }
    }

    Ok(BasicCertificate {
        m,
        m_prime: mp,
        f,
        f_prime,
    })
}

/// A full reduction run: the verified steps, the regular terminal pair, the
/// product of the step constants, and the base-case certificate.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub start: (SpecialSymbol, SpecialSymbol),
    pub steps: Vec<ReductionStep>,
    pub terminal: (SpecialSymbol, SpecialSymbol),
    pub total_c: Scalar,
    pub basic: BasicCertificate,
}

/// Iterate verified reduction steps until the relation is regular, certify
/// the terminal pair against the base cases, and cross-check the whole
/// family pair by the direct transform comparison.
pub fn reduce_to_regular(z: &SpecialSymbol, zp: &SpecialSymbol) -> Result<ReductionTrace, Error> {
    let fam = Family::new(z.clone());
    let fam_p = Family::new(zp.clone());
    if family_pairs(&fam, &fam_p).is_empty() {
        return Err(Error::EmptyRelation);
    }

    let mut cur = (z.clone(), zp.clone());
    let mut steps = Vec::new();
    let mut total_c = Scalar::ONE;
    while !is_regular(&cur.0, &cur.1) {
        let step = reduce_step(&cur.0, &cur.1)?;
        if !verify_step(&cur.0, &cur.1, &step)? {
            return Err(Error::Internal(format!(
                "step verification failed at ({}, {})",
                cur.0, cur.1
            )));
        }
        let before = cur.0.symbol().len() + cur.1.symbol().len();
        let after = step.z_next.symbol().len() + step.zp_next.symbol().len();
        if after >= before {
            return Err(Error::NonTermination(format!(
                "({}, {}) -> ({}, {})",
                cur.0, cur.1, step.z_next, step.zp_next
            )));
        }
        cur = (step.z_next.clone(), step.zp_next.clone());
        steps.push(step);
    }

    let basic = certify_regular(&cur.0, &cur.1)?;
    for step in &steps {
        total_c = total_c * step.constant;
    }

    // independent cross-check: the direct transform comparison on the
    // original family pair
    let rho = omega_block(&fam, &fam_p, Basis::Irreducible, None);
    let almost = rho.transform_both();
    if almost.coeffs() != rho.coeffs() {
        return Err(Error::Internal(format!(
            "direct transform comparison failed at ({}, {})",
            z, zp
        )));
    }

    Ok(ReductionTrace {
        start: (z.clone(), zp.clone()),
        steps,
        terminal: cur,
        total_c,
        basic,
    })
}
