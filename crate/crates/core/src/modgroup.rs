//! The Hilbert modular group `SL_2(O_K)` and the groups around it: the group
//! of matrices `(1/sqrt l) L`, the Hurwitz-Maass extension, the normalizer,
//! the groups attached to an ideal, and the congruence subgroups.
//!
//! Everything is projective: a [`SigmaElem`] represents `±(1/sqrt l) L`, and
//! equality is equality of canonical representatives.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::ideals::{self, FracIdeal, IdealHNF};
use crate::quadfield::{parse_rational, FieldCtx, QuadElem};

pub mod sample;

pub use sample::{sample, Letter, Sample, SampleKind, Sampler};

pub type Mat2 = [[QuadElem; 2]; 2];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_det(a: &Mat2) -> QuadElem {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

pub fn mat2_adj(a: &Mat2) -> Mat2 {
    [[a[1][1].clone(), -&a[0][1]], [-&a[1][0], a[0][0].clone()]]
}

pub fn mat2_conj(a: &Mat2) -> Mat2 {
    a.clone().map(|row| row.map(|e| e.conj()))
}

pub fn mat2_scale(a: &Mat2, q: &BigRational) -> Mat2 {
    a.clone().map(|row| row.map(|e| e.scale(q)))
}

pub fn mat2_map(a: &Mat2, f: impl Fn(&QuadElem) -> QuadElem) -> Mat2 {
    [[f(&a[0][0]), f(&a[0][1])], [f(&a[1][0]), f(&a[1][1])]]
}

pub fn mat2_identity(ctx: &FieldCtx) -> Mat2 {
    [[ctx.one(), ctx.zero()], [ctx.zero(), ctx.one()]]
}

/// Denominator `d` of `L` in the basis `(1, omega)` and the content of `d L`.
fn omega_scaling(ctx: &FieldCtx, l: &Mat2) -> (BigInt, BigInt) {
    let coords: Vec<BigRational> = l
        .iter()
        .flatten()
        .flat_map(|e| {
            let (p, q) = ctx.omega_coords(e);
            [p, q]
        })
        .collect();
    let d = arith::lcm_all(coords.iter().map(|c| c.denom()));
    let scaled: Vec<BigInt> = coords
        .iter()
        .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
        .collect();
    (d.clone(), arith::gcd_all(&scaled))
}

fn omega_denominator(ctx: &FieldCtx, l: &Mat2) -> BigInt {
    omega_scaling(ctx, l).0
}

/// `±(1/sqrt l) L` with `L` integral, `det L = l`, in canonical form:
/// `l` is the least value over all such representations of the same real
/// matrix, and the first nonzero entry of `L` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaElem {
    pub l: Mat2,
    pub ell: BigInt,
}

impl SigmaElem {
    /// The real matrix `(1/sqrt(ell)) l` for any `l` over `K` with `det l = ell > 0`.
    pub fn new(ctx: &FieldCtx, l: Mat2, ell: BigRational) -> Result<Self> {
        let det = mat2_det(&l);
        if det.as_rational() != Some(&ell) || !ell.is_positive() {
            return Err(Error::WrongCase(format!(
                "det L = {det} must equal l = {ell} > 0"
            )));
        }
        Ok(Self::canonical(ctx, l, ell))
    }

    pub fn from_sl2(ctx: &FieldCtx, l: Mat2) -> Result<Self> {
        Self::new(ctx, l, arith::rat(1))
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        SigmaElem {
            l: mat2_identity(ctx),
            ell: BigInt::one(),
        }
    }

    fn canonical(ctx: &FieldCtx, l: Mat2, ell: BigRational) -> Self {
        let (d, c) = omega_scaling(ctx, &l);
        let (l1, ell1) = if d == c {
            (l, ell.to_integer())
        } else {
            let f = BigRational::new(d, c);
            let ell = (ell * &f * &f).to_integer();
            (mat2_scale(&l, &f), ell)
        };
        let (l, ell) = if ell1.is_one() {
            (l1, ell1)
        } else {
            let rt = ctx.sqrt_m();
            let l2 = mat2_map(&l1, |e| e * &rt);
            let c2 = BigRational::from_integer(omega_scaling(ctx, &l2).1);
            let ell2 =
                (BigRational::from_integer(&ell1 * BigInt::from(ctx.m)) / &c2 / &c2).to_integer();
            if ell2 < ell1 {
                (mat2_scale(&l2, &c2.recip()), ell2)
            } else {
                (l1, ell1)
            }
        };
        let first = l
            .iter()
            .flatten()
            .find(|e| !e.is_zero())
            .expect("nonzero matrix");
        let l = if first.is_negative() {
            mat2_map(&l, |e| -e)
        } else {
            l
        };
        SigmaElem { l, ell }
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Self) -> Self {
        let ell = BigRational::from_integer(&self.ell * &other.ell);
        Self::canonical(ctx, mat2_mul(&self.l, &other.l), ell)
    }

    pub fn inv(&self, ctx: &FieldCtx) -> Self {
        Self::canonical(
            ctx,
            mat2_adj(&self.l),
            BigRational::from_integer(self.ell.clone()),
        )
    }

    pub fn pow(&self, ctx: &FieldCtx, e: u32) -> Self {
        (0..e).fold(Self::identity(ctx), |acc, _| acc.mul(ctx, self))
    }

    /// Sign relating the conjugate `(1/sqrt l) L'` to the Galois conjugate of
    /// the real matrix. It is `-1` exactly when `l = m s^2`, where the matrix
    /// lies in `SL_2(K)` but `sqrt(l) = s sqrt(m)` changes sign under
    /// conjugation.
    pub fn conj_sign(&self, ctx: &FieldCtx) -> i64 {
        let (q, r) = self.ell.div_rem(&BigInt::from(ctx.m));
        if r.is_zero() && arith::is_square(&q).is_some() {
            -1
        } else {
            1
        }
    }

    /// The real matrix as a matrix over `K`, when it lies in `SL_2(K)`.
    pub fn as_k_matrix(&self, ctx: &FieldCtx) -> Option<Mat2> {
        if let Some(s) = arith::is_square(&self.ell) {
            return Some(mat2_scale(&self.l, &BigRational::new(BigInt::one(), s)));
        }
        let (q, r) = self.ell.div_rem(&BigInt::from(ctx.m));
        let s = if r.is_zero() {
            arith::is_square(&q)?
        } else {
            return None;
        };
        // L / (s sqrt m) = L sqrt(m) / (s m)
        let rt = ctx
            .sqrt_m()
            .scale(&BigRational::new(BigInt::one(), s * BigInt::from(ctx.m)));
        Some(mat2_map(&self.l, |e| e * &rt))
    }

    /// The (entry_i * conj(entry_j)) products of the real matrix,
    /// `sigma * L_i * L_j' / l`, indexed row-major `(alpha, beta, gamma, delta)`.
    pub fn conj_products(&self, ctx: &FieldCtx) -> [[QuadElem; 4]; 4] {
        let f = BigRational::new(BigInt::from(self.conj_sign(ctx)), self.ell.clone());
        let e: Vec<&QuadElem> = self.l.iter().flatten().collect();
        std::array::from_fn(|i| std::array::from_fn(|j| (e[i] * &e[j].conj()).scale(&f)))
    }

    pub fn to_normalizer(&self, ctx: &FieldCtx) -> NormalizerElem {
        NormalizerElem {
            l: self.l.clone(),
            delta: ctx.big(self.ell.clone()),
        }
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        use num_traits::ToPrimitive;
        let s = self.ell.to_f64().unwrap().sqrt();
        self.l.clone().map(|row| row.map(|e| e.to_f64() / s))
    }
}

impl fmt::Display for SigmaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &self.l;
        write!(f, "[[{},{}],[{},{}]]", l[0][0], l[0][1], l[1][0], l[1][1])?;
        if !self.ell.is_one() {
            write!(f, "/sqrt({})", self.ell)?;
        }
        Ok(())
    }
}

/// Parses `"[[a,b],[c,d]]/sqrt(l)"`, `"[[a,b],[c,d]]"` (then `l = det`),
/// `"I"` or `"V<l>"` for the Atkin-Lehner matrix.
pub fn parse_sigma(ctx: &FieldCtx, s: &str) -> Result<SigmaElem> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "I" || s.eq_ignore_ascii_case("identity") {
        return Ok(SigmaElem::identity(ctx));
    }
    if let Some(rest) = s.strip_prefix('V') {
        let ell: u64 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad Atkin-Lehner label '{s}'")))?;
        return atkin_lehner(ctx, ell);
    }
    let bad = || Error::Parse(format!("expected [[a,b],[c,d]]/sqrt(l), got '{s}'"));
    let end = s.rfind("]]").ok_or_else(bad)?;
    let (mat, suffix) = s.split_at(end + 2);
    let inner = mat
        .strip_prefix("[[")
        .and_then(|r| r.strip_suffix("]]"))
        .ok_or_else(bad)?;
    let (r0, r1) = inner.split_once("],[").ok_or_else(bad)?;
    let row = |r: &str| -> Result<[QuadElem; 2]> {
        let (a, b) = r.split_once(',').ok_or_else(bad)?;
        Ok([ctx.parse_elem(a)?, ctx.parse_elem(b)?])
    };
    let l = [row(r0)?, row(r1)?];
    let ell = if suffix.is_empty() {
        mat2_det(&l)
            .as_rational()
            .cloned()
            .ok_or_else(|| Error::Parse("determinant is not rational".into()))?
    } else {
        let inner = suffix
            .strip_prefix("/sqrt(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        parse_rational(inner).ok_or_else(bad)?
    };
    SigmaElem::new(ctx, l, ell)
}

/// `(1/sqrt delta) L` with `delta = det L` in `O_K`, `delta > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerElem {
    pub l: Mat2,
    pub delta: QuadElem,
}

impl NormalizerElem {
    pub fn in_normalizer(&self, ctx: &FieldCtx) -> bool {
        if !self.delta.is_positive() || mat2_det(&self.l) != self.delta {
            return false;
        }
        if !self.l.iter().flatten().all(|e| ctx.is_integral(e)) {
            return false;
        }
        let (Ok(content), Ok(det_ideal)) = (
            ideals::content_ideal(ctx, &self.l),
            IdealHNF::principal(ctx, &self.delta),
        ) else {
            return false;
        };
        content.mul(ctx, &content) == det_ideal
    }

    pub fn in_gamma_star(&self, ctx: &FieldCtx) -> bool {
        self.delta.is_totally_positive() && self.in_normalizer(ctx)
    }

    /// `M G M^{-1}` as a matrix over `K`; the scalar `1/sqrt(delta)` cancels.
    pub fn conjugate_matrix(&self, g: &Mat2) -> Mat2 {
        let inv_delta = self.delta.inv().expect("nonzero determinant");
        mat2_map(&mat2_mul(&mat2_mul(&self.l, g), &mat2_adj(&self.l)), |e| {
            e * &inv_delta
        })
    }
}

impl fmt::Display for NormalizerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = &self.l;
        write!(
            f,
            "[[{},{}],[{},{}]]/sqrt({})",
            l[0][0], l[0][1], l[1][0], l[1][1], self.delta
        )
    }
}

/// A primitive ideal `I` with its inverse `(1/N) I'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaICtx {
    pub ideal: IdealHNF,
    pub inv: FracIdeal,
    pub n: BigInt,
}

impl GammaICtx {
    pub fn new(ctx: &FieldCtx, ideal: IdealHNF) -> Result<Self> {
        let inv = ideal.inverse(ctx)?;
        let n = ideal.norm();
        Ok(GammaICtx { ideal, inv, n })
    }

    pub fn unit(ctx: &FieldCtx) -> Self {
        Self::new(ctx, IdealHNF::unit()).expect("O_K is primitive")
    }

    fn shape_ok(&self, ctx: &FieldCtx, m: &Mat2) -> bool {
        ctx.is_integral(&m[0][0])
            && ctx.is_integral(&m[1][1])
            && self.ideal.contains(ctx, &m[0][1])
            && self.inv.contains(ctx, &m[1][0])
    }
}

pub fn in_gamma(m: &SigmaElem) -> bool {
    // canonical L is integral, so l = 1 is exactly SL_2(O_K)
    m.ell.is_one()
}

pub fn in_gamma_i(ctx: &FieldCtx, m: &SigmaElem, ictx: &GammaICtx) -> bool {
    m.as_k_matrix(ctx).is_some_and(|k| ictx.shape_ok(ctx, &k))
}

/// Membership in the Hurwitz-Maass extension of the group attached to `I`:
/// some representation `(1/sqrt k) L` with `k` squarefree has `L` in
/// `[[O_K, I], [I^{-1}, O_K]]` and `I(L)^2 = k O_K`.
pub fn in_gamma_star_i(ctx: &FieldCtx, m: &SigmaElem, ictx: &GammaICtx) -> bool {
    let rt = ctx.sqrt_m();
    let other = mat2_map(&m.l, |e| e * &rt);
    let reps = [
        (m.l.clone(), m.ell.clone()),
        (other, &m.ell * BigInt::from(ctx.m)),
    ];
    reps.into_iter().any(|(l, ell)| {
        let k = arith::squarefree_part(&ell);
        let s = arith::is_square(&(&ell / &k)).expect("ell = k s^2");
        let l = mat2_scale(&l, &BigRational::new(BigInt::one(), s));
        if !ictx.shape_ok(ctx, &l) {
            return false;
        }
        let d = omega_denominator(ctx, &l);
        let ld = mat2_scale(&l, &BigRational::from_integer(d.clone()));
        let Ok(content) = ideals::content_ideal(ctx, &ld) else {
            return false;
        };
        content
            .mul(ctx, &content)
            .is_principal_integer(&(&d * &d * k))
    })
}

pub fn in_gamma_star(ctx: &FieldCtx, m: &SigmaElem) -> bool {
    m.to_normalizer(ctx).in_gamma_star(ctx)
}

fn check_divisor(ctx: &FieldCtx, ell: u64) -> Result<()> {
    if ell == 0 || !ctx.disc.is_multiple_of(ell) || !arith::is_squarefree(ell) {
        return Err(Error::BadDivisor(ell.to_string()));
    }
    Ok(())
}

/// `V_l = (1/sqrt l) [[nu l, mu (m + sqrt m)], [m - sqrt m, l]]` with
/// `nu l - mu m(m-1)/l = 1` and `nu` least positive.
pub fn atkin_lehner(ctx: &FieldCtx, ell: u64) -> Result<SigmaElem> {
    check_divisor(ctx, ell)?;
    let m = BigInt::from(ctx.m);
    let l = BigInt::from(ell);
    let prod: BigInt = &m * (&m - 1);
    if !prod.is_multiple_of(&l) {
        return Err(Error::NoBezout(format!("{ell} does not divide m(m-1)")));
    }
    let k = prod / &l;
    let (nu, mu) = arith::bezout_min_positive(&l, &k)
        .ok_or_else(|| Error::NoBezout(format!("gcd({ell}, m(m-1)/{ell}) != 1")))?;
    let mplus = &ctx.big(m.clone()) + &ctx.sqrt_m();
    let lmat = [
        [
            ctx.big(&nu * &l),
            mplus.scale(&BigRational::from_integer(mu)),
        ],
        [mplus.conj(), ctx.big(l.clone())],
    ];
    SigmaElem::new(ctx, lmat, BigRational::from_integer(l))
}

/// The Atkin-Lehner matrix for the group attached to `I`:
/// `(1/sqrt l) [[nu l, mu u N], [u', l]]`, `u = l/gcd(l,N) + m + sqrt m`,
/// `nu l - mu N u u'/l = 1`.
pub fn atkin_lehner_ideal(ctx: &FieldCtx, ictx: &GammaICtx, ell: u64) -> Result<SigmaElem> {
    check_divisor(ctx, ell)?;
    let l = BigInt::from(ell);
    let n = &ictx.n;
    let shift = &l / l.gcd(n) + BigInt::from(ctx.m);
    let u = &ctx.big(shift) + &ctx.sqrt_m();
    let nuu = n * u.norm().to_integer();
    if !nuu.is_multiple_of(&l) {
        return Err(Error::NoBezout(format!("{ell} does not divide N u u'")));
    }
    let k = nuu / &l;
    let (nu, mu) = arith::bezout_min_positive(&l, &k)
        .ok_or_else(|| Error::NoBezout(format!("gcd({ell}, N u u'/{ell}) != 1")))?;
    let lmat = [
        [
            ctx.big(&nu * &l),
            u.scale(&BigRational::from_integer(mu * n)),
        ],
        [u.conj(), ctx.big(l.clone())],
    ];
    let v = SigmaElem::new(ctx, lmat, BigRational::from_integer(l))?;
    if !in_gamma_star_i(ctx, &v, ictx) {
        return Err(Error::WrongCase(format!(
            "V_{ell} is not in the extension of Gamma_K(I)"
        )));
    }
    Ok(v)
}

/// `V_k Gamma = V_l Gamma`.
pub fn coset_eq(ctx: &FieldCtx, vk: &SigmaElem, vl: &SigmaElem) -> bool {
    in_gamma(&vk.inv(ctx).mul(ctx, vl))
}

pub fn coset_eq_i(ctx: &FieldCtx, ictx: &GammaICtx, vk: &SigmaElem, vl: &SigmaElem) -> bool {
    in_gamma_i(ctx, &vk.inv(ctx).mul(ctx, vl), ictx)
}

/// Squarefree divisors of `d_K` grouped by the coset of `V_l`.
pub fn coset_classes(ctx: &FieldCtx) -> Result<Vec<Vec<u64>>> {
    let mut classes: Vec<(SigmaElem, Vec<u64>)> = Vec::new();
    for ell in arith::squarefree_divisors(ctx.disc) {
        let v = atkin_lehner(ctx, ell)?;
        match classes.iter_mut().find(|(rep, _)| coset_eq(ctx, rep, &v)) {
            Some((_, members)) => members.push(ell),
            None => classes.push((v, vec![ell])),
        }
    }
    Ok(classes.into_iter().map(|(_, c)| c).collect())
}

pub fn coset_count(ctx: &FieldCtx) -> Result<usize> {
    Ok(coset_classes(ctx)?.len())
}

/// `2^(nu-1)` with `nu` the number of primes dividing `d_K`.
pub fn index_formula(ctx: &FieldCtx) -> usize {
    1 << (arith::prime_divisors(ctx.disc).len() - 1)
}

/// `(1/sqrt eps_0) diag(eps_0, 1)`, for a fundamental unit of norm -1.
pub fn m0_unit(ctx: &FieldCtx) -> Result<NormalizerElem> {
    let eps = ctx.fundamental_unit();
    if eps.norm() != arith::rat(-1) {
        return Err(Error::WrongCase("fundamental unit has norm +1".into()));
    }
    Ok(NormalizerElem {
        l: [[eps.clone(), ctx.zero()], [ctx.zero(), ctx.one()]],
        delta: eps,
    })
}

/// `(1/sqrt u) [[mu a + nu u, mu u], [u, a]]` for `m = a^2 + b^2`, `a` odd,
/// `u = b + sqrt m`, `nu a - 2 mu b = 1`.
pub fn m0_two_squares(ctx: &FieldCtx) -> Result<NormalizerElem> {
    let (a, b) = ctx
        .two_squares()
        .map_err(|e| Error::WrongCase(e.to_string()))?;
    let (ai, bi) = (BigInt::from(a), BigInt::from(b));
    let (nu, mu) = arith::bezout_min_positive(&ai, &(BigInt::from(2) * &bi))
        .ok_or_else(|| Error::NoBezout(format!("gcd({a}, 2*{b}) != 1")))?;
    let u = &ctx.big(bi) + &ctx.sqrt_m();
    let q = |n: &BigInt| BigRational::from_integer(n.clone());
    let l = [
        [&ctx.big(&mu * &ai) + &u.scale(&q(&nu)), u.scale(&q(&mu))],
        [u.clone(), ctx.big(ai)],
    ];
    debug_assert_eq!(mat2_det(&l), u);
    Ok(NormalizerElem { l, delta: u })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum M0Source {
    /// Built from a fundamental unit of norm -1.
    Unit,
    /// Built from a sum of two squares.
    TwoSquares,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizerClass {
    Equal,
    Extended {
        m0: Box<NormalizerElem>,
        source: M0Source,
    },
}

/// Whether the normalizer equals the Hurwitz-Maass extension, and an extra
/// coset representative when it does not.
pub fn normalizer_class(ctx: &FieldCtx) -> Result<NormalizerClass> {
    let eps = ctx.fundamental_unit();
    let norm_plus = eps.norm().is_one();
    let p3 = arith::prime_divisors(ctx.disc)
        .into_iter()
        .any(|p| p % 4 == 3);
    Ok(if norm_plus && p3 {
        NormalizerClass::Equal
    } else if !norm_plus {
        NormalizerClass::Extended {
            m0: Box::new(m0_unit(ctx)?),
            source: M0Source::Unit,
        }
    } else {
        NormalizerClass::Extended {
            m0: Box::new(m0_two_squares(ctx)?),
            source: M0Source::TwoSquares,
        }
    })
}

pub fn khat_primes(ctx: &FieldCtx) -> Vec<u64> {
    arith::prime_divisors(ctx.disc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitKernel {
    /// `2 + eps + eps'`.
    pub shift: BigInt,
    /// Squarefree part of `shift`.
    pub q: BigInt,
    pub divides: bool,
    /// `(1/sqrt(shift)) diag(eps + 1, eps' + 1)`.
    pub matrix: SigmaElem,
}

pub fn unit_kernel_check(ctx: &FieldCtx, eps: &QuadElem) -> Result<UnitKernel> {
    let is_unit = ctx.is_integral(eps) && eps.norm().abs().is_one();
    if !is_unit || !eps.is_totally_positive() {
        return Err(Error::NotTotallyPositiveUnit(eps.to_string()));
    }
    let shift = (eps.trace() + arith::rat(2)).to_integer();
    let q = arith::squarefree_part(&shift);
    let divides = BigInt::from(ctx.disc).is_multiple_of(&q);
    let l = [
        [eps + &ctx.one(), ctx.zero()],
        [ctx.zero(), &eps.conj() + &ctx.one()],
    ];
    let matrix = SigmaElem::new(ctx, l, BigRational::from_integer(shift.clone()))?;
    Ok(UnitKernel {
        shift,
        q,
        divides,
        matrix,
    })
}

fn gamma_matrix(ctx: &FieldCtx, m: &SigmaElem) -> Result<Mat2> {
    if !in_gamma(m) {
        return Err(Error::NotInGamma);
    }
    Ok(m.as_k_matrix(ctx).expect("l = 1"))
}

/// `alpha alpha' = delta delta' = 1 mod N` and `gamma in N O_K`.
pub fn cor2a_lhs(ctx: &FieldCtx, m: &SigmaElem, n: u64) -> Result<bool> {
    let k = gamma_matrix(ctx, m)?;
    let nn = BigInt::from(n);
    let norm_one = |e: &QuadElem| (e.norm().to_integer() - BigInt::one()).is_multiple_of(&nn);
    let gamma_ok = IdealHNF::unit().scale(&nn).contains(ctx, &k[1][0]);
    Ok(norm_one(&k[0][0]) && norm_one(&k[1][1]) && gamma_ok)
}

fn congruent_to_scalar(ctx: &FieldCtx, k: &Mat2, ideal: &IdealHNF, n: u64) -> bool {
    (0..n as i64)
        .filter(|e| (e * e - 1).rem_euclid(n as i64) == 0)
        .any(|e| {
            let eps = ctx.int(e);
            ideal.contains(ctx, &(&k[0][0] - &eps))
                && ideal.contains(ctx, &(&k[1][1] - &eps))
                && ideal.contains(ctx, &k[0][1])
                && ideal.contains(ctx, &k[1][0])
        })
}

/// `M = eps I mod N O_K` for some integer `eps` with `eps^2 = 1 mod N`.
pub fn cor2b_lhs(ctx: &FieldCtx, m: &SigmaElem, n: u64) -> Result<bool> {
    let k = gamma_matrix(ctx, m)?;
    Ok(congruent_to_scalar(
        ctx,
        &k,
        &IdealHNF::unit().scale(&BigInt::from(n)),
        n,
    ))
}

/// `M = eps I mod A_N` for some integer `eps` with `eps^2 = 1 mod N`.
pub fn cor3_lhs(ctx: &FieldCtx, m: &SigmaElem, n: u64) -> Result<bool> {
    let k = gamma_matrix(ctx, m)?;
    let a = ideals::a_ell(ctx, n)?;
    Ok(congruent_to_scalar(ctx, &k, &a, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn k(m: u64) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    fn mat(ctx: &FieldCtx, e: [&str; 4]) -> Mat2 {
        let p = |s: &str| ctx.parse_elem(s).unwrap();
        [[p(e[0]), p(e[1])], [p(e[2]), p(e[3])]]
    }

    #[test]
    fn group_operations() {
        let ctx = k(2);
        let t = SigmaElem::from_sl2(&ctx, mat(&ctx, ["1", "1", "0", "1"])).unwrap();
        assert_eq!(t.mul(&ctx, &t.inv(&ctx)), SigmaElem::identity(&ctx));
        let neg = SigmaElem::from_sl2(&ctx, mat(&ctx, ["-1", "-1", "0", "-1"])).unwrap();
        assert_eq!(t, neg);
        let d = SigmaElem::new(&ctx, mat(&ctx, ["2", "0", "0", "1"]), rat(2)).unwrap();
        assert_eq!(d.mul(&ctx, &d.inv(&ctx)), SigmaElem::identity(&ctx));
    }

    #[test]
    fn atkin_lehner_examples() {
        let k2 = k(2);
        // l = m: (1/sqrt 2) L = L sqrt(2) / 2 is already in SL_2(O_K)
        let v2 = atkin_lehner(&k2, 2).unwrap();
        assert_eq!(
            v2.l,
            mat(&k2, ["sqrt(2)", "1+sqrt(2)", "-1+sqrt(2)", "sqrt(2)"])
        );
        assert_eq!(v2.ell, int(1));
        assert_eq!(v2.as_k_matrix(&k2).unwrap(), v2.l);

        let k6 = k(6);
        let v2 = atkin_lehner(&k6, 2).unwrap();
        assert_eq!(v2.l, mat(&k6, ["16", "6+sqrt(6)", "6-sqrt(6)", "2"]));
        assert_eq!(mat2_det(&v2.l), k6.int(2));
        assert!(!in_gamma(&v2));
        let v1 = atkin_lehner(&k6, 1).unwrap();
        assert!(in_gamma(&v1));
        assert!(matches!(atkin_lehner(&k6, 4), Err(Error::BadDivisor(_))));
        assert!(matches!(atkin_lehner(&k6, 5), Err(Error::BadDivisor(_))));
    }

    #[test]
    fn v_m_lies_in_gamma() {
        for m in [2u64, 3, 5, 6, 7, 13, 15] {
            let ctx = k(m);
            let vm = atkin_lehner(&ctx, m).unwrap();
            assert!(in_gamma(&vm), "m = {m}");
            assert_eq!(vm.conj_sign(&ctx), 1);
        }
    }

    #[test]
    fn coset_pairing() {
        let k6 = k(6);
        assert_eq!(coset_classes(&k6).unwrap(), vec![vec![1, 6], vec![2, 3]]);
        assert_eq!(coset_count(&k(5)).unwrap(), 1);
        let v3 = atkin_lehner(&k6, 3).unwrap();
        assert!(coset_eq(&k6, &v3, &v3));
    }

    #[test]
    fn index_matches_coset_count() {
        for m in [2u64, 3, 5, 6, 7, 10, 13, 15, 17, 21, 33, 30, 105] {
            let ctx = k(m);
            assert_eq!(coset_count(&ctx).unwrap(), index_formula(&ctx), "m = {m}");
        }
    }

    #[test]
    fn membership_examples() {
        let k5 = k(5);
        let t = SigmaElem::from_sl2(&k5, mat(&k5, ["1", "1", "0", "1"])).unwrap();
        assert!(in_gamma(&t));
        assert!(in_gamma_star(&k5, &t));
        let d = SigmaElem::new(&k5, mat(&k5, ["2", "0", "0", "1"]), rat(2)).unwrap();
        assert!(!d.to_normalizer(&k5).in_normalizer(&k5));

        let ideal = IdealHNF::from_canonical(&k5, 11, 1).unwrap();
        let ictx = GammaICtx::new(&k5, ideal).unwrap();
        let g = (&k5.one() + &k5.omega.conj()).scale(&arith::ratio(1, 11));
        let lower = SigmaElem::from_sl2(&k5, [[k5.one(), k5.zero()], [g, k5.one()]]).unwrap();
        assert!(in_gamma_i(&k5, &lower, &ictx));
        assert!(!in_gamma(&lower));
        let upper = SigmaElem::from_sl2(&k5, mat(&k5, ["1", "1", "0", "1"])).unwrap();
        assert!(!in_gamma_i(&k5, &upper, &ictx));
    }

    #[test]
    fn atkin_lehner_for_ideals() {
        let k5 = k(5);
        let ictx = GammaICtx::new(&k5, IdealHNF::from_canonical(&k5, 11, 1).unwrap()).unwrap();
        let v1 = atkin_lehner_ideal(&k5, &ictx, 1).unwrap();
        assert!(in_gamma_i(&k5, &v1, &ictx));
        let v5 = atkin_lehner_ideal(&k5, &ictx, 5).unwrap();
        // u = 5 + 5 + sqrt 5, u' = 10 - sqrt 5, and sqrt(5) u' / 5 = -1 + 2 sqrt 5
        assert_eq!(v5.l[1][0], k5.parse_elem("-1+2*sqrt(5)").unwrap());
        assert!(in_gamma_star_i(&k5, &v5, &ictx));
        assert!(in_gamma_i(&k5, &v5, &ictx));

        let k6 = k(6);
        let unit = GammaICtx::unit(&k6);
        let w2 = atkin_lehner_ideal(&k6, &unit, 2).unwrap();
        let v2 = atkin_lehner(&k6, 2).unwrap();
        assert!(coset_eq(&k6, &w2, &v2));
    }

    #[test]
    fn m0_constructions() {
        let k2 = k(2);
        let m0 = m0_unit(&k2).unwrap();
        assert_eq!(m0.delta, k2.parse_elem("1+sqrt(2)").unwrap());
        assert!(m0.in_normalizer(&k2));
        assert!(!m0.in_gamma_star(&k2));

        let k13 = k(13);
        let m0 = m0_two_squares(&k13).unwrap();
        let u = k13.parse_elem("2+sqrt(13)").unwrap();
        assert_eq!(m0.delta, u);
        assert_eq!(u.norm(), rat(-9));
        assert!(m0.in_normalizer(&k13));
        assert!(!m0.in_gamma_star(&k13));
        assert!(matches!(m0_unit(&k(3)), Err(Error::WrongCase(_))));
        assert!(matches!(m0_two_squares(&k(3)), Err(Error::WrongCase(_))));
    }

    #[test]
    fn normalizer_classes() {
        assert_eq!(normalizer_class(&k(3)).unwrap(), NormalizerClass::Equal);
        assert_eq!(normalizer_class(&k(6)).unwrap(), NormalizerClass::Equal);
        assert!(matches!(
            normalizer_class(&k(2)).unwrap(),
            NormalizerClass::Extended {
                source: M0Source::Unit,
                ..
            }
        ));
        // eps_0 = 35 + 6 sqrt 34 has norm +1 and 34 = 3^2 + 5^2
        assert!(matches!(
            normalizer_class(&k(34)).unwrap(),
            NormalizerClass::Extended {
                source: M0Source::TwoSquares,
                ..
            }
        ));
    }

    #[test]
    fn unit_kernel_examples() {
        let k2 = k(2);
        let r = unit_kernel_check(&k2, &k2.parse_elem("3+2*sqrt(2)").unwrap()).unwrap();
        assert_eq!(
            (r.shift.clone(), r.q.clone(), r.divides),
            (int(8), int(2), true)
        );
        assert!(in_gamma_star(&k2, &r.matrix));
        let k3 = k(3);
        let r = unit_kernel_check(&k3, &k3.parse_elem("2+sqrt(3)").unwrap()).unwrap();
        assert_eq!((r.q, r.divides), (int(6), true));
        let k5 = k(5);
        let r = unit_kernel_check(&k5, &k5.parse_elem("3/2+1/2*sqrt(5)").unwrap()).unwrap();
        assert_eq!((r.q, r.divides), (int(5), true));
        assert!(matches!(
            unit_kernel_check(&k2, &k2.parse_elem("1+sqrt(2)").unwrap()),
            Err(Error::NotTotallyPositiveUnit(_))
        ));
    }

    #[test]
    fn congruence_predicates() {
        let k5 = k(5);
        for n in [2u64, 3, 5] {
            let t = SigmaElem::from_sl2(&k5, mat(&k5, ["1", &n.to_string(), "0", "1"])).unwrap();
            assert!(cor2a_lhs(&k5, &t, n).unwrap());
            assert!(cor2b_lhs(&k5, &t, n).unwrap());
        }
        let t = SigmaElem::from_sl2(&k5, mat(&k5, ["1", "5", "0", "1"])).unwrap();
        assert!(cor3_lhs(&k5, &t, 5).unwrap());
        let t1 = SigmaElem::from_sl2(&k5, mat(&k5, ["1", "1", "0", "1"])).unwrap();
        assert!(!cor2b_lhs(&k5, &t1, 2).unwrap());
        assert!(cor2a_lhs(&k5, &t1, 2).unwrap());
        let tw = SigmaElem::from_sl2(&k5, mat(&k5, ["1", "w", "0", "1"])).unwrap();
        assert!(cor3_lhs(&k5, &tw, 5).unwrap());
        let v5 = SigmaElem::new(&k5, mat(&k5, ["2", "0", "0", "1"]), rat(2)).unwrap();
        assert_eq!(cor2a_lhs(&k5, &v5, 2), Err(Error::NotInGamma));
    }

    #[test]
    fn parse_matrices() {
        let k6 = k(6);
        let v2 = parse_sigma(&k6, "[[16, 6+sqrt(6)], [6-sqrt(6), 2]]/sqrt(2)").unwrap();
        assert_eq!(v2, atkin_lehner(&k6, 2).unwrap());
        assert_eq!(parse_sigma(&k6, "V2").unwrap(), v2);
        assert_eq!(parse_sigma(&k6, &v2.to_string()).unwrap(), v2);
        assert_eq!(parse_sigma(&k6, "I").unwrap(), SigmaElem::identity(&k6));
        assert!(parse_sigma(&k6, "[[1,1],[0,1]]/sqrt(2)").is_err());
        assert!(parse_sigma(&k6, "[[1,1],[0,1]").is_err());
    }
}
