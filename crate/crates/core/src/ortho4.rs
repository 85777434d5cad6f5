//! Rational 4x4 matrices, the Gram matrices `S` and `T_N`, and the
//! orthogonal groups they define.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::quadfield::QuadElem;

pub type Mat2Rat = [[BigRational; 2]; 2];
pub type Mat4 = [[BigRational; 4]; 4];

pub fn identity() -> Mat4 {
    diag([arith::rat(1), arith::rat(1), arith::rat(1), arith::rat(1)])
}

pub fn zero() -> Mat4 {
    std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()))
}

pub fn diag(d: [BigRational; 4]) -> Mat4 {
    let mut out = zero();
    for (i, x) in d.into_iter().enumerate() {
        out[i][i] = x;
    }
    out
}

pub fn from_ints(rows: [[i64; 4]; 4]) -> Mat4 {
    rows.map(|r| r.map(arith::rat))
}

pub fn mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..4).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
        })
    })
}

pub fn transpose(a: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn sub(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] - &b[i][j]))
}

pub fn neg(a: &Mat4) -> Mat4 {
    a.clone().map(|r| r.map(|x| -x))
}

pub fn is_integral(a: &Mat4) -> bool {
    a.iter().flatten().all(|x| x.is_integer())
}

pub fn det(a: &Mat4) -> BigRational {
    let mut m = a.clone();
    let mut d = BigRational::one();
    for c in 0..4 {
        let Some(p) = (c..4).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..4 {
            let f = &m[r][c] / &m[c][c];
            for k in c..4 {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    d
}

pub fn inverse(a: &Mat4) -> Result<Mat4> {
    let mut m = a.clone();
    let mut inv = identity();
    for c in 0..4 {
        let p = (c..4)
            .find(|&r| !m[r][c].is_zero())
            .ok_or(Error::Singular)?;
        m.swap(p, c);
        inv.swap(p, c);
        let piv = m[c][c].recip();
        for k in 0..4 {
            m[c][k] *= &piv;
            inv[c][k] *= &piv;
        }
        for r in 0..4 {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..4 {
                    let (t1, t2) = (&f * &m[c][k], &f * &inv[c][k]);
                    m[r][k] -= t1;
                    inv[r][k] -= t2;
                }
            }
        }
    }
    Ok(inv)
}

pub fn to_strings(a: &Mat4) -> Vec<Vec<String>> {
    a.iter()
        .map(|r| r.iter().map(arith::fmt_rat).collect())
        .collect()
}

/// An even binary form `S` and its extension `T_N` by the hyperbolic plane
/// scaled by `N`:
/// ```text
///      [ 0  0  N ]
/// T =  [ 0  S  0 ]
///      [ N  0  0 ]
/// ```
#[derive(Debug)]
pub struct GramForm {
    pub s: Mat2Rat,
    pub n: BigRational,
    pub ext: Mat4,
    split: OnceLock<Result<(Mat4, Mat4)>>,
}

impl Clone for GramForm {
    fn clone(&self) -> Self {
        GramForm::new(self.s.clone(), self.n.clone())
    }
}

impl PartialEq for GramForm {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.n == other.n
    }
}

impl GramForm {
    pub fn new(s: Mat2Rat, n: BigRational) -> Self {
        let mut ext = zero();
        ext[0][3] = n.clone();
        ext[3][0] = n.clone();
        for i in 0..2 {
            for j in 0..2 {
                ext[i + 1][j + 1] = s[i][j].clone();
            }
        }
        GramForm {
            s,
            n,
            ext,
            split: OnceLock::new(),
        }
    }

    /// `S = [[2uu', uv'+u'v], [uv'+u'v, 2vv']]` with corner 1.
    pub fn of_basis(u: &QuadElem, v: &QuadElem) -> Result<Self> {
        if (u * &v.conj() - &u.conj() * v).is_zero() {
            return Err(Error::DegenerateBasis);
        }
        let two = arith::rat(2);
        let off = (u * &v.conj()).trace();
        let s = [[u.norm() * &two, off.clone()], [off, v.norm() * &two]];
        Ok(Self::new(s, arith::rat(1)))
    }

    pub fn with_corner(&self, n: BigRational) -> Self {
        Self::new(self.s.clone(), n)
    }

    pub fn scaled(&self, k: &BigRational) -> Self {
        Self::new(self.s.clone().map(|r| r.map(|x| x * k)), &self.n * k)
    }

    pub fn det_s(&self) -> BigRational {
        &self.s[0][0] * &self.s[1][1] - &self.s[0][1] * &self.s[1][0]
    }

    pub fn is_even_integral(&self) -> bool {
        let s = &self.s;
        s.iter().flatten().all(|x| x.is_integer())
            && self.n.is_integer()
            && !s[0][0].to_integer().bit(0)
            && !s[1][1].to_integer().bit(0)
    }

    /// `R` with `R^T T R = diag(p1, p2, n1, n2)`, `p > 0 > n`, and `R^{-1}`.
    pub fn split_basis(&self) -> Result<&(Mat4, Mat4)> {
        self.split
            .get_or_init(|| split(&self.ext))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_orthogonal(&self, u: &Mat4) -> bool {
        mul(&mul(&transpose(u), &self.ext), u) == self.ext && det(u).is_one()
    }

    pub fn in_so0(&self, u: &Mat4) -> Result<bool> {
        if !self.is_orthogonal(u) {
            return Err(Error::NotOrthogonal);
        }
        let (r, rinv) = self.split_basis()?;
        let w = mul(&mul(rinv, u), r);
        let d = &w[0][0] * &w[1][1] - &w[0][1] * &w[1][0];
        Ok(d.is_positive())
    }

    pub fn in_discriminant_kernel(&self, u: &Mat4) -> bool {
        is_integral(u) && matches!(self.in_so0(u), Ok(true)) && self.kernel_congruence(u)
    }

    /// `T^{-1}`, read off the block structure.
    pub fn ext_inverse(&self) -> Mat4 {
        let s = &self.s;
        let det = self.det_s();
        let mut out = zero();
        out[0][3] = self.n.recip();
        out[3][0] = self.n.recip();
        out[1][1] = &s[1][1] / &det;
        out[2][2] = &s[0][0] / &det;
        out[1][2] = -(&s[0][1] / &det);
        out[2][1] = -(&s[1][0] / &det);
        out
    }

    /// `U` integral with `U - I` in `Z^{4x4} T`.
    pub fn kernel_congruence(&self, u: &Mat4) -> bool {
        is_integral(u) && is_integral(&mul(&sub(u, &identity()), &self.ext_inverse()))
    }

    /// Integral and in the identity component.
    pub fn in_so0_z(&self, u: &Mat4) -> bool {
        is_integral(u) && matches!(self.in_so0(u), Ok(true))
    }
}

fn split(t: &Mat4) -> Result<(Mat4, Mat4)> {
    let mut r = identity();
    let gram = |r: &Mat4| mul(&mul(&transpose(r), t), r);
    let col_add = |r: &mut Mat4, dst: usize, src: usize, f: &BigRational| {
        for row in r.iter_mut() {
            let t = &row[src] * f;
            row[dst] += t;
        }
    };
    let col_swap = |r: &mut Mat4, a: usize, b: usize| {
        for row in r.iter_mut() {
            row.swap(a, b);
        }
    };
    for k in 0..4 {
        let a = gram(&r);
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..4).find(|&j| !a[j][j].is_zero()) {
                col_swap(&mut r, k, j);
            } else if let Some(j) = (k + 1..4).find(|&j| !a[k][j].is_zero()) {
                col_add(&mut r, k, j, &arith::rat(1));
            } else {
                return Err(Error::WrongSignature);
            }
        }
        let a = gram(&r);
        for j in k + 1..4 {
            let f = -(&a[k][j] / &a[k][k]);
            col_add(&mut r, j, k, &f);
        }
    }
    let a = gram(&r);
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by_key(|&i| !a[i][i].is_positive());
    if order.iter().filter(|&&i| a[i][i].is_positive()).count() != 2
        || order.iter().filter(|&&i| a[i][i].is_negative()).count() != 2
    {
        return Err(Error::WrongSignature);
    }
    let r: Mat4 = std::array::from_fn(|i| std::array::from_fn(|j| r[i][order[j]].clone()));
    let d = gram(&r);
    for i in 0..4 {
        for j in 0..4 {
            assert!(
                i == j || d[i][j].is_zero(),
                "split basis is not diagonalizing"
            );
        }
    }
    let rinv = inverse(&r)?;
    Ok((r, rinv))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugator {
    /// `diag(1, 1, 1, n)`
    F,
    /// `diag(1, n, n, 1)`
    G,
    /// `diag(n, 1, 1, 1)`
    H,
    /// `diag(n, 1, 1, 1/n)`
    Hn,
}

pub fn conjugator(kind: Conjugator, n: u64) -> Mat4 {
    let n = BigRational::from_integer(BigInt::from(n));
    let one = || arith::rat(1);
    match kind {
        Conjugator::F => diag([one(), one(), one(), n]),
        Conjugator::G => diag([one(), n.clone(), n, one()]),
        Conjugator::H => diag([n, one(), one(), one()]),
        Conjugator::Hn => diag([n.clone(), one(), one(), n.recip()]),
    }
}

/// `C^{-1} U C`.
pub fn conjugate(u: &Mat4, c: &Mat4) -> Mat4 {
    mul(&mul(&inverse(c).expect("invertible conjugator"), u), c)
}
