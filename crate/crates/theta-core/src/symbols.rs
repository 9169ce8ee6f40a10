//! Symbols and bipartitions.
//!
//! A symbol is an ordered pair of strictly decreasing rows of non-negative
//! integers. Its rank and defect classify which group's unipotent data it
//! indexes, and the staircase map [`Symbol::upsilon`] identifies symbols of a
//! fixed defect with bipartitions.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Which row of a symbol an entry sits in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Row {
    Top,
    Bottom,
}

impl Row {
    pub fn other(self) -> Row {
        match self {
            Row::Top => Row::Bottom,
            Row::Bottom => Row::Top,
        }
    }
}

/// An ordered pair of strictly decreasing rows of non-negative integers.
///
/// Text form is `a1,a2,...;b1,b2,...` with `-` for an empty row, e.g.
/// `5,3,1;4,2,0` or `2;-`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

fn strictly_decreasing(row: &[u32]) -> bool {
    row.windows(2).all(|w| w[0] > w[1])
}

impl Symbol {
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Result<Symbol, Error> {
        if !strictly_decreasing(&top) || !strictly_decreasing(&bottom) {
            return Err(Error::InvalidSymbol(format!(
                "rows must be strictly decreasing: {:?};{:?}",
                top, bottom
            )));
        }
        Ok(Symbol { top, bottom })
    }

    pub fn empty() -> Symbol {
        Symbol {
            top: vec![],
            bottom: vec![],
        }
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn row(&self, row: Row) -> &[u32] {
        match row {
            Row::Top => &self.top,
            Row::Bottom => &self.bottom,
        }
    }

    /// Number of entries `|A| + |B|`.
    pub fn len(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(|A|, |B|)`.
    pub fn size(&self) -> (usize, usize) {
        (self.top.len(), self.bottom.len())
    }

    /// `def = |A| - |B|`, signed.
    pub fn defect(&self) -> i64 {
        self.top.len() as i64 - self.bottom.len() as i64
    }

    /// `rk = sum(A) + sum(B) - floor(((|A|+|B|-1)/2)^2)`.
    pub fn rank(&self) -> u32 {
        let total: u64 = self.top.iter().chain(&self.bottom).map(|&x| x as u64).sum();
        let n = self.len() as u64;
        if n == 0 {
            return 0;
        }
        // floor(((n-1)/2)^2) with (n-1)/2 taken as an exact half-integer
        let m = n - 1;
        let floor_sq = (m * m) / 4;
        (total - floor_sq) as u32
    }

    pub fn transpose(&self) -> Symbol {
        Symbol {
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    pub fn contains(&self, value: u32, row: Row) -> bool {
        self.row(row).contains(&value)
    }

    /// True when 0 does not appear in both rows at once.
    pub fn is_reduced(&self) -> bool {
        !(self.top.last() == Some(&0) && self.bottom.last() == Some(&0))
    }

    /// The unique reduced symbol equivalent to this one. Rank and defect are
    /// unchanged.
    pub fn reduce(&self) -> Symbol {
        let mut top = self.top.clone();
        let mut bottom = self.bottom.clone();
        while top.last() == Some(&0) && bottom.last() == Some(&0) {
            top.pop();
            bottom.pop();
            for x in top.iter_mut().chain(bottom.iter_mut()) {
                *x -= 1;
            }
        }
        Symbol { top, bottom }
    }

    /// The equivalence shift applied `k` times: add `k` to every entry and
    /// append the staircase `k-1,...,0` to both rows.
    pub fn shift_up(&self, k: u32) -> Symbol {
        let mut top: Vec<u32> = self.top.iter().map(|&x| x + k).collect();
        let mut bottom: Vec<u32> = self.bottom.iter().map(|&x| x + k).collect();
        for i in (0..k).rev() {
            top.push(i);
            bottom.push(i);
        }
        Symbol { top, bottom }
    }

    /// Subtract the staircase from each row and drop zero parts.
    ///
    /// Applied verbatim to symbols of any defect; for defects 0 and 1 this is
    /// the standard bijection onto bipartitions of the rank.
    pub fn upsilon(&self) -> Bipartition {
        let strip = |row: &[u32]| -> Vec<u32> {
            let m = row.len();
            row.iter()
                .enumerate()
                .map(|(i, &x)| x - (m - 1 - i) as u32)
                .filter(|&p| p > 0)
                .collect()
        };
        Bipartition {
            lambda: strip(&self.top),
            mu: strip(&self.bottom),
        }
    }

    /// Insert a fresh entry into the given row, keeping it sorted.
    pub fn insert(&self, value: u32, row: Row) -> Result<Symbol, Error> {
        let mut s = self.clone();
        let r = match row {
            Row::Top => &mut s.top,
            Row::Bottom => &mut s.bottom,
        };
        if r.contains(&value) {
            return Err(Error::InvalidSymbol(format!(
                "duplicate entry {} in row of {}",
                value, self
            )));
        }
        r.push(value);
        r.sort_unstable_by(|a, b| b.cmp(a));
        Ok(s)
    }

    /// All entries as (value, row) pairs in descending interleaved order:
    /// sorted by value descending, top row first on ties.
    pub fn entries(&self) -> Vec<(u32, Row)> {
        let mut v: Vec<(u32, Row)> = self
            .top
            .iter()
            .map(|&x| (x, Row::Top))
            .chain(self.bottom.iter().map(|&x| (x, Row::Bottom)))
            .collect();
        v.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        v
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |row: &[u32]| -> String {
            if row.is_empty() {
                "-".to_string()
            } else {
                row.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        write!(f, "{};{}", side(&self.top), side(&self.bottom))
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

fn parse_row(s: &str) -> Result<Vec<u32>, Error> {
    let s = s.trim();
    if s == "-" || s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad entry `{}`", p)))
        })
        .collect()
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol, Error> {
        let mut it = s.split(';');
        let top = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad symbol `{}`", s)))?;
        let bottom = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad symbol `{}`", s)))?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("bad symbol `{}`", s)));
        }
        Symbol::new(parse_row(top)?, parse_row(bottom)?)
    }
}

/// An ordered pair of partitions. Text form `l1,l2,...|m1,m2,...` with `-`
/// for an empty side.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bipartition {
    lambda: Vec<u32>,
    mu: Vec<u32>,
}

fn weakly_decreasing_positive(p: &[u32]) -> bool {
    p.iter().all(|&x| x > 0) && p.windows(2).all(|w| w[0] >= w[1])
}

impl Bipartition {
    pub fn new(lambda: Vec<u32>, mu: Vec<u32>) -> Result<Bipartition, Error> {
        if !weakly_decreasing_positive(&lambda) || !weakly_decreasing_positive(&mu) {
            return Err(Error::Parse(format!(
                "parts must be positive and weakly decreasing: {:?}|{:?}",
                lambda, mu
            )));
        }
        Ok(Bipartition { lambda, mu })
    }

    pub fn empty() -> Bipartition {
        Bipartition {
            lambda: vec![],
            mu: vec![],
        }
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn mu(&self) -> &[u32] {
        &self.mu
    }

    pub fn total(&self) -> u32 {
        self.lambda.iter().chain(&self.mu).sum()
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: &[u32]| -> String {
            if p.is_empty() {
                "-".to_string()
            } else {
                p.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        write!(f, "{}|{}", side(&self.lambda), side(&self.mu))
    }
}

impl fmt::Debug for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Bipartition, Error> {
        let mut it = s.split('|');
        let l = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad bipartition `{}`", s)))?;
        let m = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad bipartition `{}`", s)))?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("bad bipartition `{}`", s)));
        }
        Bipartition::new(parse_row(l)?, parse_row(m)?)
    }
}

/// Add the staircase back and pad with zeros to the requested row lengths,
/// then reduce. Inverse to [`Symbol::upsilon`] at matching sizes.
pub fn upsilon_inv(b: &Bipartition, sizes: (usize, usize)) -> Result<Symbol, Error> {
    let (m1, m2) = sizes;
    if m1 < b.lambda.len() || m2 < b.mu.len() {
        return Err(Error::SizesTooSmall {
            wanted: sizes,
            lambda_len: b.lambda.len(),
            mu_len: b.mu.len(),
        });
    }
    let build = |parts: &[u32], m: usize| -> Vec<u32> {
        (0..m)
            .map(|i| parts.get(i).copied().unwrap_or(0) + (m - 1 - i) as u32)
            .collect()
    };
    let s = Symbol {
        top: build(&b.lambda, m1),
        bottom: build(&b.mu, m2),
    };
    Ok(s.reduce())
}

/// `lam` interleaves `mu`: `mu1 >= lam1 >= mu2 >= lam2 >= ...` with missing
/// parts read as 0.
pub fn interleaves(lam: &[u32], mu: &[u32]) -> bool {
    let get = |p: &[u32], i: usize| p.get(i).copied().unwrap_or(0);
    let n = lam.len().max(mu.len());
    for i in 0..n {
        if get(mu, i) < get(lam, i) {
            return false;
        }
        if get(lam, i) < get(mu, i + 1) {
            return false;
        }
    }
    true
}

/// All partitions of `n` as weakly decreasing lists, largest part first.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(prefix.clone());
            return;
        }
        let hi = rem.min(max);
        for part in (1..=hi).rev() {
            prefix.push(part);
            go(rem - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All bipartitions of `n`.
pub fn bipartitions(n: u32) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in 0..=n {
        for lam in partitions(k) {
            for mu in partitions(n - k) {
                out.push(Bipartition {
                    lambda: lam.clone(),
                    mu,
                });
            }
        }
    }
    out
}

/// The reduced symbol of defect `defect` whose bipartition is empty; its rank
/// is the minimum rank attained at that defect.
pub fn minimal_symbol(defect: i64) -> Symbol {
    let k = defect.unsigned_abs() as usize;
    let staircase: Vec<u32> = (0..k).rev().map(|i| i as u32).collect();
    if defect >= 0 {
        Symbol {
            top: staircase,
            bottom: vec![],
        }
    } else {
        Symbol {
            top: vec![],
            bottom: staircase,
        }
    }
}

/// All reduced symbols of the given rank and defect, sorted.
pub fn enumerate_symbols(rank: u32, defect: i64) -> Vec<Symbol> {
    let base = minimal_symbol(defect).rank();
    if rank < base {
        return Vec::new();
    }
    let mut out = Vec::new();
    for b in bipartitions(rank - base) {
        let m2 = [
            b.mu.len() as i64,
            b.lambda.len() as i64 - defect,
            -defect,
            0,
        ]
        .into_iter()
        .max()
        .unwrap() as usize;
        let m1 = (m2 as i64 + defect) as usize;
        let s = upsilon_inv(&b, (m1, m2)).expect("sizes chosen to fit");
        debug_assert_eq!(s.rank(), rank);
        debug_assert_eq!(s.defect(), defect);
        out.push(s);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Symbol {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        // canonical shift check: (1,0;1,0) -> (0;0) -> (-;-)
        assert_eq!(sym("1,0;1,0").reduce(), sym("-;-"));
        assert_eq!(sym("2;-").reduce(), sym("2;-"));
        assert_eq!(sym("5,3,1;4,2,0").reduce(), sym("5,3,1;4,2,0"));
        // idempotent
        let s = sym("3,2,1;2,1,0");
        assert_eq!(s.reduce(), s.reduce().reduce());
    }

    #[test]
    fn reduce_preserves_rank_and_defect() {
        let s = sym("4,2,1;4,2,1");
        let r = s.reduce();
        assert_eq!(s.rank(), r.rank());
        assert_eq!(s.defect(), r.defect());
    }

    #[test]
    fn rank_defect_examples() {
        assert_eq!(sym("2,0;1").rank(), 2);
        assert_eq!(sym("2,0;1").defect(), 1);
        assert_eq!(sym("-;-").rank(), 0);
        assert_eq!(sym("-;-").defect(), 0);
        assert_eq!(sym("-;2,1,0").rank(), 2);
        assert_eq!(sym("-;2,1,0").defect(), -3);
        // worked-through values used elsewhere
        assert_eq!(sym("5,3,1;3,1").rank(), 9);
        assert_eq!(sym("5,3,1;4,2,0").rank(), 9);
    }

    #[test]
    fn transpose_negates_defect() {
        let s = sym("5,3,1;4,2");
        assert_eq!(s.transpose().defect(), -s.defect());
        assert_eq!(s.transpose().rank(), s.rank());
        assert_eq!(s.transpose().transpose(), s);
    }

    #[test]
    fn upsilon_examples() {
        assert_eq!(sym("2,0;1").upsilon(), "1|1".parse().unwrap());
        assert_eq!(sym("-;2,1,0").upsilon(), Bipartition::empty());
        assert_eq!(sym("-;-").upsilon(), Bipartition::empty());
        assert_eq!(sym("2,1,0;2,1").upsilon(), "-|1,1".parse().unwrap());
        assert_eq!(sym("2;-").upsilon(), "2|-".parse().unwrap());
    }

    #[test]
    fn upsilon_inv_examples() {
        let b: Bipartition = "1|1".parse().unwrap();
        assert_eq!(upsilon_inv(&b, (2, 1)).unwrap(), sym("2,0;1"));
        assert_eq!(
            upsilon_inv(&Bipartition::empty(), (1, 0)).unwrap(),
            sym("0;-")
        );
        assert_eq!(
            upsilon_inv(&Bipartition::empty(), (0, 3)).unwrap(),
            sym("-;2,1,0")
        );
        assert!(upsilon_inv(&b, (0, 1)).is_err());
    }

    #[test]
    fn upsilon_roundtrip_on_enumerated_symbols() {
        for defect in [-4i64, -3, -2, -1, 0, 1, 2, 3, 4, 5] {
            for rank in 0..=6u32 {
                for s in enumerate_symbols(rank, defect) {
                    let b = s.upsilon();
                    let back = upsilon_inv(&b, s.size()).unwrap();
                    assert_eq!(back, s, "roundtrip failed for {}", s);
                }
            }
        }
    }

    #[test]
    fn interleave_examples() {
        assert!(!interleaves(&[], &[5, 2])); // mu2=2 > lam1=0
        assert!(interleaves(&[], &[5]));
        assert!(interleaves(&[], &[]));
        assert!(interleaves(&[2, 1], &[2, 1]));
        assert!(!interleaves(&[3], &[2]));
        assert!(interleaves(&[1], &[2, 1]));
        assert!(!interleaves(&[1, 1], &[1]));
    }

    // Independent oracle: lam interleaves mu iff lam is contained in mu and
    // the skew shape mu/lam is a horizontal strip, i.e. the conjugate parts
    // differ by at most one.
    fn interleaves_oracle(lam: &[u32], mu: &[u32]) -> bool {
        let get = |p: &[u32], i: usize| p.get(i).copied().unwrap_or(0);
        let contained = (0..lam.len().max(mu.len())).all(|i| get(lam, i) <= get(mu, i));
        let conj = |p: &[u32]| -> Vec<u32> {
            let height = p.first().copied().unwrap_or(0) as usize;
            (1..=height)
                .map(|col| p.iter().filter(|&&part| part as usize >= col).count() as u32)
                .collect()
        };
        let cl = conj(lam);
        let cm = conj(mu);
        let strip = (0..cl.len().max(cm.len())).all(|i| get(&cm, i) <= get(&cl, i) + 1);
        contained && strip
    }

    #[test]
    fn interleaves_matches_horizontal_strip_oracle() {
        let all: Vec<Vec<u32>> = (0..=8).flat_map(partitions).collect();
        for p in &all {
            assert!(interleaves(p, p), "reflexive on {:?}", p);
            for q in &all {
                assert_eq!(
                    interleaves(p, q),
                    interleaves_oracle(p, q),
                    "oracle mismatch at {:?}, {:?}",
                    p,
                    q
                );
                // antisymmetry
                if interleaves(p, q) && interleaves(q, p) {
                    assert_eq!(p, q);
                }
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_symbols(1, 0), vec![sym("0;1"), sym("1;0")]);
        assert_eq!(enumerate_symbols(1, 2), vec![sym("1,0;-")]);
        assert_eq!(enumerate_symbols(0, 1), vec![sym("0;-")]);
        assert_eq!(enumerate_symbols(1, -2), vec![sym("-;1,0")]);
        assert_eq!(enumerate_symbols(0, 2), Vec::<Symbol>::new());
    }

    // Independent count oracle: p2(n) from the partition-count recurrence,
    // no partition lists involved.
    fn p2_count(n: usize) -> u64 {
        let mut p = vec![0u64; n + 1];
        p[0] = 1;
        for part in 1..=n {
            for total in part..=n {
                p[total] += p[total - part];
            }
        }
        (0..=n).map(|k| p[k] * p[n - k]).sum()
    }

    #[test]
    fn enumeration_counts_match_bipartition_counts() {
        for n in 0..=10u32 {
            let expect = p2_count(n as usize);
            assert_eq!(
                enumerate_symbols(n, 0).len() as u64,
                expect,
                "defect 0, n={}",
                n
            );
            assert_eq!(
                enumerate_symbols(n, 1).len() as u64,
                expect,
                "defect 1, n={}",
                n
            );
        }
    }

    #[test]
    fn parse_display_roundtrip() {
        for text in ["-;-", "2;-", "-;2,1,0", "5,3,1;4,2,0", "0;1"] {
            assert_eq!(sym(text).to_string(), text);
        }
        assert!("3;1;2".parse::<Symbol>().is_err());
        assert!("1,2;0".parse::<Symbol>().is_err()); // increasing row
        assert!("x;0".parse::<Symbol>().is_err());
    }
}
