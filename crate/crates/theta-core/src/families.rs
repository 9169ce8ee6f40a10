//! Special symbols and their families.
//!
//! A special symbol `Z` has weakly interleaved rows; flipping subsets `M` of
//! its singles `Z_I` between the rows produces the family members `Λ_M`.
//! Defect-1 families (symplectic side) admit only even subsets; defect-0
//! families (even-orthogonal side) admit all subsets, with the subset parity
//! separating the plus and minus forms.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::symbols::{enumerate_symbols, Row, Symbol};

/// Which defect class a special symbol lives in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GroupKind {
    /// Defect 1, symplectic side.
    Sp,
    /// Defect 0, even-orthogonal side (both forms together).
    Opm,
}

impl GroupKind {
    pub fn special_defect(self) -> i64 {
        match self {
            GroupKind::Sp => 1,
            GroupKind::Opm => 0,
        }
    }
}

/// The plus/minus form tag on the even-orthogonal side.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn sign_char(self) -> char {
        match self {
            Eps::Plus => '+',
            Eps::Minus => '-',
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign_char())
    }
}

/// True when the reduced symbol has defect 1 or 0 and its rows interleave
/// weakly, top row first.
pub fn is_special(s: &Symbol) -> bool {
    if !s.is_reduced() {
        return false;
    }
    let (m1, m2) = s.size();
    if m1 != m2 && m1 != m2 + 1 {
        return false;
    }
    let a = s.top();
    let b = s.bottom();
    for i in 0..m2 {
        if a[i] < b[i] {
            return false;
        }
        if i + 1 < m1 && b[i] < a[i + 1] {
            return false;
        }
    }
    true
}

/// A reduced special symbol together with its defect class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpecialSymbol {
    base: Symbol,
    kind: GroupKind,
}

impl SpecialSymbol {
    pub fn new(base: Symbol) -> Result<SpecialSymbol, Error> {
        if !base.is_reduced() {
            return Err(Error::NotReduced(base.to_string()));
        }
        if !is_special(&base) {
            return Err(Error::NotSpecial(base.to_string()));
        }
        let kind = match base.defect() {
            1 => GroupKind::Sp,
            0 => GroupKind::Opm,
            _ => return Err(Error::NotSpecial(base.to_string())),
        };
        Ok(SpecialSymbol { base, kind })
    }

    pub fn symbol(&self) -> &Symbol {
        &self.base
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn rank(&self) -> u32 {
        self.base.rank()
    }

    /// The subsymbol of entries appearing in exactly one row.
    pub fn singles(&self) -> Symbol {
        let doubled: Vec<u32> = self
            .base
            .top()
            .iter()
            .copied()
            .filter(|v| self.base.bottom().contains(v))
            .collect();
        let keep = |row: &[u32]| -> Vec<u32> {
            row.iter()
                .copied()
                .filter(|v| !doubled.contains(v))
                .collect()
        };
        Symbol::new(keep(self.base.top()), keep(self.base.bottom())).expect("rows stay sorted")
    }

    /// `deg(Z)`: the number of singles is `2d+1` (defect 1) or `2d` (defect 0).
    pub fn degree(&self) -> u32 {
        (self.singles().len() as u32) / 2
    }

    /// Degenerate defect-0 symbols have no singles and a one-element family.
    pub fn is_degenerate(&self) -> bool {
        self.singles().is_empty()
    }
}

impl fmt::Display for SpecialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)
    }
}

impl fmt::Debug for SpecialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.base)
    }
}

/// A subset of the singles of a special symbol, as a bitmask over the
/// descending interleaved order of `Z_I`.
pub type Subset = u32;

/// A family: the special symbol, its ordered singles, and the admissible
/// member subsets in ascending bitmask order.
pub struct Family {
    z: SpecialSymbol,
    singles: Vec<(u32, Row)>,
    members: Vec<Subset>,
    symbols: Vec<Symbol>,
}

impl Family {
    pub fn new(z: SpecialSymbol) -> Arc<Family> {
        let singles_sym = z.singles();
        let singles = singles_sym.entries();
        let n = singles.len() as u32;
        let all_even = z.kind() == GroupKind::Sp;
        let mut members = Vec::new();
        for mask in 0..(1u32 << n) {
            if all_even && mask.count_ones() % 2 == 1 {
                continue;
            }
            members.push(mask);
        }
        let mut fam = Family {
            z,
            singles,
            members,
            symbols: Vec::new(),
        };
        fam.symbols = fam.members.iter().map(|&m| fam.apply_subset(m)).collect();
        Arc::new(fam)
    }

    pub fn of_symbol(z: &Symbol) -> Result<Arc<Family>, Error> {
        Ok(Family::new(SpecialSymbol::new(z.clone())?))
    }

    pub fn special(&self) -> &SpecialSymbol {
        &self.z
    }

    pub fn kind(&self) -> GroupKind {
        self.z.kind()
    }

    pub fn degree(&self) -> u32 {
        self.z.degree()
    }

    /// Singles of `Z` in descending interleaved order; bit `i` of a subset
    /// refers to `singles()[i]`.
    pub fn singles(&self) -> &[(u32, Row)] {
        &self.singles
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn member_subsets(&self) -> &[Subset] {
        &self.members
    }

    pub fn member_symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn member_symbol(&self, index: usize) -> &Symbol {
        &self.symbols[index]
    }

    pub fn subset_at(&self, index: usize) -> Subset {
        self.members[index]
    }

    pub fn index_of_subset(&self, m: Subset) -> Option<usize> {
        self.members.binary_search(&m).ok()
    }

    pub fn index_of_symbol(&self, lam: &Symbol) -> Option<usize> {
        self.symbols.iter().position(|s| s == lam)
    }

    fn is_admissible(&self, m: Subset) -> bool {
        m < (1u32 << self.singles.len())
            && (self.kind() == GroupKind::Opm || m.count_ones().is_multiple_of(2))
    }

    fn apply_subset(&self, m: Subset) -> Symbol {
        let mut top: Vec<u32> = Vec::new();
        let mut bottom: Vec<u32> = Vec::new();
        let flip: Vec<(u32, Row)> = self
            .singles
            .iter()
            .enumerate()
            .filter(|(i, _)| m & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        for &v in self.z.symbol().top() {
            if flip.contains(&(v, Row::Top)) {
                bottom.push(v);
            } else {
                top.push(v);
            }
        }
        for &v in self.z.symbol().bottom() {
            if flip.contains(&(v, Row::Bottom)) {
                top.push(v);
            } else {
                bottom.push(v);
            }
        }
        top.sort_unstable_by(|a, b| b.cmp(a));
        bottom.sort_unstable_by(|a, b| b.cmp(a));
        Symbol::new(top, bottom).expect("entries within a row are distinct")
    }

    /// `Λ_M`: switch the rows of the singles selected by `m`.
    pub fn lambda_of_subset(&self, m: Subset) -> Result<Symbol, Error> {
        if !self.is_admissible(m) {
            return Err(Error::OddSubset);
        }
        Ok(self.apply_subset(m))
    }

    /// Left inverse of [`Family::lambda_of_subset`].
    pub fn subset_of_lambda(&self, lam: &Symbol) -> Result<Subset, Error> {
        let mut m: Subset = 0;
        for (i, &(v, row)) in self.singles.iter().enumerate() {
            if lam.contains(v, row.other()) {
                m |= 1 << i;
            } else if !lam.contains(v, row) {
                return Err(Error::NotInFamily {
                    symbol: lam.to_string(),
                    special: self.z.to_string(),
                });
            }
        }
        if !self.is_admissible(m) || &self.apply_subset(m) != lam {
            return Err(Error::NotInFamily {
                symbol: lam.to_string(),
                special: self.z.to_string(),
            });
        }
        Ok(m)
    }

    /// F₂ addition on members: symmetric difference of subsets.
    pub fn add_members(&self, a: Subset, b: Subset) -> Subset {
        a ^ b
    }

    /// The family pairing mod 2: `|M1 ∩ M2|` for defect 1, and
    /// `|M1||M2| + |M1 ∩ M2|` for defect 0.
    pub fn pairing(&self, a: Subset, b: Subset) -> u8 {
        let inter = (a & b).count_ones();
        let extra = match self.kind() {
            GroupKind::Sp => 0,
            GroupKind::Opm => a.count_ones() * b.count_ones(),
        };
        ((inter + extra) % 2) as u8
    }

    /// The plus/minus tag of a defect-0 member; defect-1 members have none.
    pub fn epsilon(&self, m: Subset) -> Option<Eps> {
        match self.kind() {
            GroupKind::Sp => None,
            GroupKind::Opm => Some(if m.count_ones().is_multiple_of(2) {
                Eps::Plus
            } else {
                Eps::Minus
            }),
        }
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family({}, deg {})", self.z, self.degree())
    }
}

impl PartialEq for Family {
    fn eq(&self, other: &Family) -> bool {
        // singles and members are derived from the special symbol
        self.z == other.z
    }
}

impl Eq for Family {}

/// All special symbols of the given rank and kind, sorted.
pub fn enumerate_special(rank: u32, kind: GroupKind) -> Vec<SpecialSymbol> {
    enumerate_symbols(rank, kind.special_defect())
        .into_iter()
        .filter(is_special)
        .map(|s| SpecialSymbol { base: s, kind })
        .collect()
}

/// Sort a symbol's entries into the unique special arrangement and return the
/// special symbol with the flipped-singles subset realizing the input.
///
/// Rejects symbols whose defect is outside both groups' classes (defect
/// congruent to 3 mod 4 yields an odd subset in a defect-1 family).
pub fn family_of(lam: &Symbol) -> Result<(SpecialSymbol, Subset), Error> {
    if !lam.is_reduced() {
        return Err(Error::NotReduced(lam.to_string()));
    }
    let mut values: Vec<u32> = lam
        .top()
        .iter()
        .chain(lam.bottom().iter())
        .copied()
        .collect();
    values.sort_unstable_by(|a, b| b.cmp(a));
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if i % 2 == 0 {
            top.push(v);
        } else {
            bottom.push(v);
        }
    }
    let z = SpecialSymbol::new(Symbol::new(top, bottom)?)?;
    let fam = Family::new(z.clone());
    let m = fam.subset_of_lambda(lam).map_err(|_| Error::DefectClass {
        symbol: lam.to_string(),
        defect: lam.defect(),
    })?;
    Ok((z, m))
}
