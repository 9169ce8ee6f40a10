//! Exact arithmetic in the ring Z[1/2, sqrt2].
//!
//! Every coefficient that shows up in the family transforms and in the
//! reduction constants has the form `a + b*sqrt2` with `a`, `b` dyadic
//! rationals, so this ring is closed under everything we compute:
//! Fourier kernels contribute `1/2^d`, lifted basis vectors contribute
//! `1/sqrt2 = sqrt2/2`, and step constants are in `{1, sqrt2, 2}`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A dyadic rational `num / 2^exp` in lowest terms (`num` odd or zero).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: i128, exp: u32) -> Dyadic {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic {
            num: n as i128,
            exp: 0,
        }
    }

    /// `1 / 2^k`.
    pub fn inv_pow2(k: u32) -> Dyadic {
        Dyadic { num: 1, exp: k }
    }

    pub fn numerator(&self) -> i128 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        while self.num % 2 == 0 && self.exp > 0 {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    fn halve(self) -> Dyadic {
        Dyadic::new(self.num, self.exp + 1)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        let a = self.num << (exp - self.exp);
        let b = rhs.num << (exp - rhs.exp);
        Dyadic::new(a + b, exp)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(self.num * rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exp {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "{}/2", self.num),
            e => write!(f, "{}/2^{}", self.num, e),
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element `a + b*sqrt2` of Z[1/2, sqrt2]. Equality is exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Dyadic,
    b: Dyadic,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar {
        a: Dyadic::ZERO,
        b: Dyadic::ZERO,
    };
    pub const ONE: Scalar = Scalar {
        a: Dyadic::ONE,
        b: Dyadic::ZERO,
    };
    pub const SQRT2: Scalar = Scalar {
        a: Dyadic::ZERO,
        b: Dyadic::ONE,
    };
    pub const TWO: Scalar = Scalar {
        a: Dyadic { num: 2, exp: 0 },
        b: Dyadic::ZERO,
    };

    pub fn new(a: Dyadic, b: Dyadic) -> Scalar {
        Scalar { a, b }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar {
            a: Dyadic::from_int(n),
            b: Dyadic::ZERO,
        }
    }

    /// `1 / 2^k`.
    pub fn inv_pow2(k: u32) -> Scalar {
        Scalar {
            a: Dyadic::inv_pow2(k),
            b: Dyadic::ZERO,
        }
    }

    /// `1 / sqrt2`, i.e. `sqrt2 / 2`.
    pub fn inv_sqrt2() -> Scalar {
        Scalar {
            a: Dyadic::ZERO,
            b: Dyadic::inv_pow2(1),
        }
    }

    pub fn rational_part(&self) -> Dyadic {
        self.a
    }

    pub fn sqrt2_part(&self) -> Dyadic {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::ONE
    }

    pub fn halve(self) -> Scalar {
        Scalar {
            a: self.a.halve(),
            b: self.b.halve(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = *self + rhs;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        // (a1 + b1*r)(a2 + b2*r) = a1*a2 + 2*b1*b2 + (a1*b2 + a2*b1)*r
        let two = Dyadic::from_int(2);
        Scalar {
            a: self.a * rhs.a + two * self.b * rhs.b,
            b: self.a * rhs.b + rhs.a * self.b,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt2", self.b);
        }
        if self.b.num < 0 {
            write!(f, "{}-{}*sqrt2", self.a, -self.b)
        } else {
            write!(f, "{}+{}*sqrt2", self.a, self.b)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
