//! Minimal double-double arithmetic (about 106 significant bits).
//!
//! Only what the Hermite power series needs: exact products via fused
//! multiply-add, compensated sums, and division by a plain `f64`.

use num_complex::Complex64;
use std::ops::{Add, Mul};

/// Unit roundoff of the double-double format.
pub const DD_EPS: f64 = 4.93e-32;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact difference of two doubles.
    pub fn diff(a: f64, b: f64) -> Self {
        let (s, e) = two_sum(a, -b);
        Dd { hi: s, lo: e }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn neg(self) -> Self {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, pe) = two_prod(q1, b);
        let (s, e) = two_sum(self.hi, -p);
        let r = (s + (e - pe + self.lo)) / b;
        let (hi, lo) = quick_two_sum(q1, r);
        Dd { hi, lo }
    }

    #[cfg(test)]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn from_c64(z: Complex64) -> Self {
        CDd { re: Dd::new(z.re), im: Dd::new(z.im) }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Magnitude estimate in plain precision.
    pub fn norm_f64(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }

    pub fn div_f64(self, b: f64) -> Self {
        CDd { re: self.re.div_f64(b), im: self.im.div_f64(b) }
    }

    /// Square of a plain complex number, carried exactly to double-double.
    pub fn square_of(z: Complex64) -> Self {
        let (xx, xe) = two_prod(z.re, z.re);
        let (yy, ye) = two_prod(z.im, z.im);
        let (xy, xye) = two_prod(z.re, z.im);
        let re = Dd { hi: xx, lo: xe } + Dd { hi: -yy, lo: -ye };
        let im = Dd { hi: 2.0 * xy, lo: 2.0 * xye };
        CDd { re, im }
    }
}

impl Add for CDd {
    type Output = CDd;
    #[inline]
    fn add(self, b: CDd) -> CDd {
        CDd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Mul for CDd {
    type Output = CDd;
    #[inline]
    fn mul(self, b: CDd) -> CDd {
        CDd {
            re: self.re * b.re + (self.im * b.im).neg(),
            im: self.re * b.im + self.im * b.re,
        }
    }
}
