//! Per-family almost-character transforms over `Z[1/2, sqrt2]`.
//!
//! Within a family of degree `d` the transform kernel is
//! `F[i][j] = (-1)^{<i,j>} / 2^d`; it is symmetric and squares to the
//! identity, so the same matrix converts in both directions between the
//! irreducible basis and the almost-character basis.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::families::Family;
use crate::scalar::Scalar;

/// Which orthonormal basis a coefficient vector is written in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Basis {
    /// The irreducible-character basis (rho).
    Irreducible,
    /// The almost-character basis (R).
    Almost,
}

impl Basis {
    pub fn other(self) -> Basis {
        match self {
            Basis::Irreducible => Basis::Almost,
            Basis::Almost => Basis::Irreducible,
        }
    }
}

/// Largest family degree for which a dense transform matrix is materialized.
/// Beyond this the entrywise kernel is applied on the fly.
pub const MATRIX_DEGREE_CAP: u32 = 6;

/// One transform kernel entry, `(-1)^{<i,j>} / 2^d`.
pub fn fourier_entry(fam: &Family, i: usize, j: usize) -> Scalar {
    let sign = fam.pairing(fam.subset_at(i), fam.subset_at(j));
    let mag = Scalar::inv_pow2(fam.degree());
    if sign == 0 {
        mag
    } else {
        -mag
    }
}

/// The dense transform matrix of a family, row `i` giving the expansion of
/// the `i`-th almost character over the irreducible basis.
pub fn fourier_matrix(fam: &Family) -> Result<Vec<Vec<Scalar>>, Error> {
    if fam.degree() > MATRIX_DEGREE_CAP {
        return Err(Error::MatrixTooLarge(fam.degree()));
    }
    let n = fam.member_count();
    Ok((0..n)
        .map(|i| (0..n).map(|j| fourier_entry(fam, i, j)).collect())
        .collect())
}

/// A sparse exact-coefficient vector over one family in one basis.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassVector {
    family: Arc<Family>,
    basis: Basis,
    coeffs: BTreeMap<usize, Scalar>,
}

impl ClassVector {
    pub fn zero(family: Arc<Family>, basis: Basis) -> ClassVector {
        ClassVector {
            family,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis vector at one member.
    pub fn unit(family: Arc<Family>, basis: Basis, index: usize) -> ClassVector {
        let mut v = ClassVector::zero(family, basis);
        v.add_coeff(index, Scalar::ONE);
        v
    }

    pub fn family(&self) -> &Arc<Family> {
        &self.family
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        self.coeffs.get(&index).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Scalar> {
        &self.coeffs
    }

    pub fn add_coeff(&mut self, index: usize, c: Scalar) {
        let cur = self.coeff(index) + c;
        if cur.is_zero() {
            self.coeffs.remove(&index);
        } else {
            self.coeffs.insert(index, cur);
        }
    }

    pub fn scale(&self, c: Scalar) -> ClassVector {
        let mut out = ClassVector::zero(self.family.clone(), self.basis);
        for (&i, &v) in &self.coeffs {
            out.add_coeff(i, v * c);
        }
        out
    }

    pub fn add(&self, other: &ClassVector) -> Result<ClassVector, Error> {
        check_family(&self.family, &other.family)?;
        check_basis(self.basis, other.basis)?;
        let mut out = self.clone();
        for (&i, &v) in &other.coeffs {
            out.add_coeff(i, v);
        }
        Ok(out)
    }

    fn transformed(&self) -> ClassVector {
        let mut out = ClassVector::zero(self.family.clone(), self.basis.other());
        for j in 0..self.family.member_count() {
            let mut acc = Scalar::ZERO;
            for (&i, &c) in &self.coeffs {
                acc += fourier_entry(&self.family, j, i) * c;
            }
            if !acc.is_zero() {
                out.coeffs.insert(j, acc);
            }
        }
        out
    }
}

impl fmt::Debug for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ClassVector({:?}, {:?}, {:?})",
            self.family, self.basis, self.coeffs
        )
    }
}

fn check_family(a: &Arc<Family>, b: &Arc<Family>) -> Result<(), Error> {
    if a.special() != b.special() {
        return Err(Error::FamilyMismatch {
            left: a.special().to_string(),
            right: b.special().to_string(),
        });
    }
    Ok(())
}

fn check_basis(expected: Basis, got: Basis) -> Result<(), Error> {
    if expected != got {
        return Err(Error::BasisMismatch {
            expected: format!("{:?}", expected),
            got: format!("{:?}", got),
        });
    }
    Ok(())
}

/// Re-express an irreducible-basis vector in the almost-character basis.
pub fn to_almost(v: &ClassVector) -> Result<ClassVector, Error> {
    check_basis(Basis::Irreducible, v.basis)?;
    Ok(v.transformed())
}

/// Re-express an almost-character-basis vector in the irreducible basis.
pub fn to_irreducible(v: &ClassVector) -> Result<ClassVector, Error> {
    check_basis(Basis::Almost, v.basis)?;
    Ok(v.transformed())
}

/// Coefficient dot product; both bases are orthonormal so this is the inner
/// product as long as the bases and families agree.
pub fn inner_product(u: &ClassVector, v: &ClassVector) -> Result<Scalar, Error> {
    check_family(&u.family, &v.family)?;
    check_basis(u.basis, v.basis)?;
    let mut acc = Scalar::ZERO;
    for (&i, &c) in &u.coeffs {
        acc += c * v.coeff(i);
    }
    Ok(acc)
}

/// A sparse exact-coefficient vector over a product of two families, with an
/// independent basis tag per side.
#[derive(Clone, PartialEq, Eq)]
pub struct PairVector {
    left: Arc<Family>,
    right: Arc<Family>,
    left_basis: Basis,
    right_basis: Basis,
    coeffs: BTreeMap<(usize, usize), Scalar>,
}

impl PairVector {
    pub fn zero(
        left: Arc<Family>,
        right: Arc<Family>,
        left_basis: Basis,
        right_basis: Basis,
    ) -> PairVector {
        PairVector {
            left,
            right,
            left_basis,
            right_basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn left(&self) -> &Arc<Family> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Family> {
        &self.right
    }

    pub fn bases(&self) -> (Basis, Basis) {
        (self.left_basis, self.right_basis)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        self.coeffs.get(&(i, j)).copied().unwrap_or(Scalar::ZERO)
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), Scalar> {
        &self.coeffs
    }

    pub fn add_coeff(&mut self, i: usize, j: usize, c: Scalar) {
        let cur = self.coeff(i, j) + c;
        if cur.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), cur);
        }
    }

    pub fn scale(&self, c: Scalar) -> PairVector {
        let mut out = PairVector::zero(
            self.left.clone(),
            self.right.clone(),
            self.left_basis,
            self.right_basis,
        );
        for (&(i, j), &v) in &self.coeffs {
            out.add_coeff(i, j, v * c);
        }
        out
    }

    /// Apply the family transform on both tensor factors.
    pub fn transform_both(&self) -> PairVector {
        let mut out = PairVector::zero(
            self.left.clone(),
            self.right.clone(),
            self.left_basis.other(),
            self.right_basis.other(),
        );
        for (&(i, j), &c) in &self.coeffs {
            for a in 0..self.left.member_count() {
                let fa = fourier_entry(&self.left, a, i);
                for b in 0..self.right.member_count() {
                    let fb = fourier_entry(&self.right, b, j);
                    out.add_coeff(a, b, fa * fb * c);
                }
            }
        }
        out
    }
}

impl fmt::Debug for PairVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PairVector({:?} x {:?}, {:?}/{:?}, {} coeffs)",
            self.left,
            self.right,
            self.left_basis,
            self.right_basis,
            self.coeffs.len()
        )
    }
}

/// Coefficient dot product on product vectors; both product bases are
/// orthonormal.
pub fn inner_product_pair(u: &PairVector, v: &PairVector) -> Result<Scalar, Error> {
    check_family(&u.left, &v.left)?;
    check_family(&u.right, &v.right)?;
    check_basis(u.left_basis, v.left_basis)?;
    check_basis(u.right_basis, v.right_basis)?;
    let mut acc = Scalar::ZERO;
    for (&(i, j), &c) in &u.coeffs {
        acc += c * v.coeff(i, j);
    }
    Ok(acc)
}

/// Check that the diagonal sums agree in the two bases: the family-level
/// regular character identity. Expands the almost-character side through the
/// transform and compares exactly.
pub fn regular_sum_check(fam: &Arc<Family>) -> bool {
    let n = fam.member_count();
    let mut rho_side = PairVector::zero(
        fam.clone(),
        fam.clone(),
        Basis::Irreducible,
        Basis::Irreducible,
    );
    for i in 0..n {
        rho_side.add_coeff(i, i, Scalar::ONE);
    }
    let mut almost_diag = PairVector::zero(fam.clone(), fam.clone(), Basis::Almost, Basis::Almost);
    for i in 0..n {
        almost_diag.add_coeff(i, i, Scalar::ONE);
    }
    almost_diag.transform_both() == rho_side
}
