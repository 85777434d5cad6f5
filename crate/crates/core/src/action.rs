//! The Moebius action on `H x H`, the orthogonal action on the half-space
//! `H_T`, and their compatibility under the isomorphism.

use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::isomap::{phi_fast, BasisCtx};
use crate::modgroup::SigmaElem;
use crate::ortho4::{Mat2Rat, Mat4};
use crate::quadfield::{FieldCtx, QuadElem};

/// `re + i*im` in `K(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoint {
    pub re: QuadElem,
    pub im: QuadElem,
}

impl CPoint {
    pub fn new(re: QuadElem, im: QuadElem) -> Self {
        CPoint { re, im }
    }

    pub fn real(x: QuadElem) -> Self {
        let m = x.m();
        CPoint {
            re: x,
            im: QuadElem::zero(m),
        }
    }

    pub fn from_rationals(ctx: &FieldCtx, re: BigRational, im: BigRational) -> Self {
        CPoint {
            re: ctx.rat(re),
            im: ctx.rat(im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        CPoint {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CPoint {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        CPoint {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn scale(&self, k: &QuadElem) -> Self {
        CPoint {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = &(&o.re * &o.re) + &(&o.im * &o.im);
        let ni = n.inv()?;
        let conj = CPoint {
            re: o.re.clone(),
            im: -&o.im,
        };
        Some(self.mul(&conj).scale(&ni))
    }

    /// Positive imaginary part in the standard embedding of `K`.
    pub fn in_upper_half_plane(&self) -> bool {
        self.im.is_positive()
    }
}

impl fmt::Display for CPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+i*({})", self.re, self.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    First,
    Conjugate,
}

/// `L<tau>` (or `L'<tau>`); the scalar `1/sqrt(l)` cancels.
pub fn mobius(m: &SigmaElem, tau: &CPoint, which: Embedding) -> Result<CPoint> {
    let e = |i: usize, j: usize| match which {
        Embedding::First => CPoint::real(m.l[i][j].clone()),
        Embedding::Conjugate => CPoint::real(m.l[i][j].conj()),
    };
    let num = e(0, 0).mul(tau).add(&e(0, 1));
    let den = e(1, 0).mul(tau).add(&e(1, 1));
    num.div(&den)
        .ok_or_else(|| Error::PoleAtPoint(tau.to_string()))
}

/// `z^T T z` for `z` in `K(i)^2`.
fn quad_form(t: &Mat2Rat, z: &[CPoint; 2]) -> CPoint {
    let mut acc = CPoint::real(QuadElem::zero(z[0].re.m()));
    for i in 0..2 {
        for j in 0..2 {
            let tij = QuadElem::from_rational(t[i][j].clone(), z[0].re.m());
            acc = acc.add(&z[i].mul(&z[j]).scale(&tij));
        }
    }
    acc
}

fn rat(q: &BigRational, m: u64) -> QuadElem {
    QuadElem::from_rational(q.clone(), m)
}

/// `U{z} = -1/2 gamma~ z^T T z + d^T T z + delta~`; the middle of the last
/// row of `U` already is `d^T T`.
pub fn automorphy(u: &Mat4, z: &[CPoint; 2], t: &Mat2Rat) -> CPoint {
    let m = z[0].re.m();
    let q = quad_form(t, z);
    let half = rat(&arith::ratio(-1, 2), m);
    q.scale(&rat(&u[3][0], m))
        .scale(&half)
        .add(&z[0].scale(&rat(&u[3][1], m)))
        .add(&z[1].scale(&rat(&u[3][2], m)))
        .add(&CPoint::real(rat(&u[3][3], m)))
}

/// `U<z> = U{z}^{-1} (-1/2 z^T T z b + K z + c)`.
pub fn ortho_action(u: &Mat4, z: &[CPoint; 2], t: &Mat2Rat) -> Result<[CPoint; 2]> {
    let m = z[0].re.m();
    let j = automorphy(u, z, t);
    if j.is_zero() {
        return Err(Error::SingularAutomorphy);
    }
    let q = quad_form(t, z).scale(&rat(&arith::ratio(-1, 2), m));
    let row = |i: usize| {
        let v = q
            .scale(&rat(&u[i][0], m))
            .add(&z[0].scale(&rat(&u[i][1], m)))
            .add(&z[1].scale(&rat(&u[i][2], m)))
            .add(&CPoint::real(rat(&u[i][3], m)));
        v.div(&j).expect("nonzero automorphy")
    };
    Ok([row(1), row(2)])
}

/// `y^T T y > 0` and `y_1 > 0` for `y = Im z`.
pub fn in_half_space(z: &[CPoint; 2], t: &Mat2Rat) -> bool {
    let m = z[0].re.m();
    let y = [CPoint::real(z[0].im.clone()), CPoint::real(z[1].im.clone())];
    let v = quad_form(t, &y).re;
    debug_assert!(v.is_rational() || m > 0);
    v.is_positive() && z[0].im.is_positive()
}

/// `G z` lies in `H x H`. This is the component of the cone `y^T S y > 0`
/// the images act on; for some bases it differs from the one with `y_1 > 0`.
pub fn in_base_changed_h2(b: &BasisCtx, z: &[CPoint; 2]) -> bool {
    let tau = to_h2(b, z);
    tau[0].in_upper_half_plane() && tau[1].in_upper_half_plane()
}

/// `(tau_1, tau_2) = G z` with `G = [[u, v], [u', v']]`.
pub fn to_h2(b: &BasisCtx, z: &[CPoint; 2]) -> [CPoint; 2] {
    let (u, v) = (&b.u, &b.v);
    [
        z[0].scale(u).add(&z[1].scale(v)),
        z[0].scale(&u.conj()).add(&z[1].scale(&v.conj())),
    ]
}

/// `G^{-1} (tau_1, tau_2)`.
pub fn from_h2(b: &BasisCtx, tau: &[CPoint; 2]) -> [CPoint; 2] {
    let (u, v) = (&b.u, &b.v);
    let (uc, vc) = (u.conj(), v.conj());
    let di = (&(u * &vc) - &(v * &uc)).inv().expect("B is a basis");
    [
        tau[0].scale(&vc).sub(&tau[1].scale(v)).scale(&di),
        tau[1].scale(u).sub(&tau[0].scale(&uc)).scale(&di),
    ]
}

/// `(1/l) sigma (c tau_1 + d)(c' tau_2 + d')`, the product of the two
/// Moebius automorphy factors.
pub fn h2_automorphy(ctx: &FieldCtx, m: &SigmaElem, tau: &[CPoint; 2]) -> CPoint {
    let l = &m.l;
    let f1 = tau[0].scale(&l[1][0]).add(&CPoint::real(l[1][1].clone()));
    let f2 = tau[1]
        .scale(&l[1][0].conj())
        .add(&CPoint::real(l[1][1].conj()));
    let k = arith::rat(m.conj_sign(ctx)) / BigRational::from_integer(m.ell.clone());
    f1.mul(&f2).scale(&ctx.rat(k))
}

/// The orthogonal action of the image agrees with the Moebius action after
/// the base change, and the automorphy factors agree.
pub fn check_compat(m: &SigmaElem, b: &BasisCtx, z: &[CPoint; 2]) -> Result<bool> {
    let u = phi_fast(m, b)?;
    Ok(check_compat_matrix(m, &u, b, z))
}

/// As [`check_compat`] with a caller-supplied image matrix.
pub fn check_compat_matrix(m: &SigmaElem, u: &Mat4, b: &BasisCtx, z: &[CPoint; 2]) -> bool {
    let s = &b.s1.s;
    let Ok(w) = ortho_action(u, z, s) else {
        return false;
    };
    let tau = to_h2(b, z);
    let (Ok(t1), Ok(t2)) = (
        mobius(m, &tau[0], Embedding::First),
        mobius(m, &tau[1], Embedding::Conjugate),
    ) else {
        return false;
    };
    from_h2(b, &[t1, t2]) == w && automorphy(u, z, s) == h2_automorphy(&b.ctx, m, &tau)
}

/// A point of `H_S` with rational real and imaginary parts whose image under
/// `G` lies in `H x H`.
pub fn sample_point(b: &BasisCtx, seed: u64) -> [CPoint; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = &b.ctx;
    let mut small = |lo: i64, hi: i64| arith::ratio(rng.gen_range(lo..=hi), rng.gen_range(1..=3));
    loop {
        let x = [small(-4, 4), small(-4, 4)];
        let y = [small(1, 6), small(-6, 6)];
        let z = [
            CPoint::from_rationals(ctx, x[0].clone(), y[0].clone()),
            CPoint::from_rationals(ctx, x[1].clone(), y[1].clone()),
        ];
        if in_base_changed_h2(b, &z) && in_half_space(&z, &b.s1.s) {
            return z;
        }
    }
}
