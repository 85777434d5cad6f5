//! Ideals of the ring of integers in Hermite normal form.
//!
//! An integral ideal is stored as the Z-basis `{a, b + c*omega}` with
//! `a, c > 0`, `0 <= b < a` and `c | a`, `c | b`. The normal form is unique, so
//! ideal equality is field equality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::quadfield::{FieldCtx, QuadElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealHNF {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// The fractional ideal `num / den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracIdeal {
    pub num: IdealHNF,
    pub den: BigInt,
}

/// Hermite normal form of the Z-lattice spanned by `vectors` (coordinates in
/// the basis `(1, omega)`). Returns `None` when the lattice has rank < 2.
fn hnf_lattice(vectors: &[(BigInt, BigInt)]) -> Option<IdealHNF> {
    let mut lead = (BigInt::zero(), BigInt::zero());
    let mut pure = BigInt::zero();
    for (p, q) in vectors {
        if q.is_zero() {
            pure = pure.gcd(p);
            continue;
        }
        if lead.1.is_zero() {
            pure = pure.gcd(&lead.0);
            lead = (p.clone(), q.clone());
            continue;
        }
        let e = lead.1.extended_gcd(q);
        let (s1, s2) = (&lead.1 / &e.gcd, q / &e.gcd);
        // s2*lead - s1*(p,q) has zero omega coordinate
        pure = pure.gcd(&(&s2 * &lead.0 - &s1 * p));
        lead = (&e.x * &lead.0 + &e.y * p, e.gcd);
    }
    if lead.1.is_zero() || pure.is_zero() {
        return None;
    }
    if lead.1.is_negative() {
        lead = (-lead.0, -lead.1);
    }
    let a = pure.abs();
    let b = lead.0.mod_floor(&a);
    Some(IdealHNF { a, b, c: lead.1 })
}

impl IdealHNF {
    pub fn unit() -> Self {
        IdealHNF {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    /// The O_K-ideal generated by integral `gens`.
    pub fn from_generators(ctx: &FieldCtx, gens: &[QuadElem]) -> Result<Self> {
        let mut vectors = Vec::with_capacity(2 * gens.len());
        for g in gens {
            let c = ctx
                .int_coords(g)
                .ok_or_else(|| Error::NotIntegral(g.to_string()))?;
            vectors.push(c);
            vectors.push(ctx.int_coords(&(g * &ctx.omega)).expect("O_K is a ring"));
        }
        let ideal = hnf_lattice(&vectors).ok_or(Error::ZeroIdeal)?;
        debug_assert!(ideal.is_ideal(ctx));
        Ok(ideal)
    }

    /// The primitive ideal with Z-basis `{n, t + omega}`; requires `n | N(t + omega)`.
    pub fn from_canonical(ctx: &FieldCtx, n: u64, t: i64) -> Result<Self> {
        let gen = &ctx.int(t) + &ctx.omega;
        let norm = gen.norm().to_integer();
        if n == 0 || !(&norm % BigInt::from(n)).is_zero() {
            return Err(Error::Parse(format!(
                "{n} does not divide N({t}+w) = {norm}"
            )));
        }
        let ideal = hnf_lattice(&[
            (BigInt::from(n), BigInt::zero()),
            (BigInt::from(t), BigInt::one()),
        ])
        .expect("rank 2");
        debug_assert!(ideal.is_ideal(ctx));
        Ok(ideal)
    }

    pub fn basis(&self, ctx: &FieldCtx) -> (QuadElem, QuadElem) {
        (ctx.big(self.a.clone()), ctx.from_coords(&self.b, &self.c))
    }

    /// Index `[O_K : I]`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn contains(&self, ctx: &FieldCtx, x: &QuadElem) -> bool {
        let Some((p, q)) = ctx.int_coords(x) else {
            return false;
        };
        if !(&q % &self.c).is_zero() {
            return false;
        }
        let k = &q / &self.c;
        (p - k * &self.b).is_multiple_of(&self.a)
    }

    /// Lattice closure under multiplication by omega.
    pub fn is_ideal(&self, ctx: &FieldCtx) -> bool {
        let (e1, e2) = self.basis(ctx);
        self.contains(ctx, &(&e1 * &ctx.omega)) && self.contains(ctx, &(&e2 * &ctx.omega))
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &IdealHNF) -> IdealHNF {
        let (x1, x2) = self.basis(ctx);
        let (y1, y2) = other.basis(ctx);
        let vectors: Vec<_> = [&x1 * &y1, &x1 * &y2, &x2 * &y1, &x2 * &y2]
            .iter()
            .map(|e| ctx.int_coords(e).expect("product of integral elements"))
            .collect();
        hnf_lattice(&vectors).expect("product of nonzero ideals")
    }

    pub fn conj(&self, ctx: &FieldCtx) -> IdealHNF {
        let (e1, e2) = self.basis(ctx);
        let vectors = [
            ctx.int_coords(&e1).unwrap(),
            ctx.int_coords(&e2.conj()).unwrap(),
        ];
        hnf_lattice(&vectors).expect("conjugate of a nonzero ideal")
    }

    /// The ideal `n * I`.
    pub fn scale(&self, n: &BigInt) -> IdealHNF {
        assert!(n.is_positive());
        IdealHNF {
            a: &self.a * n,
            b: &self.b * n,
            c: &self.c * n,
        }
    }

    pub fn principal(ctx: &FieldCtx, x: &QuadElem) -> Result<IdealHNF> {
        Self::from_generators(ctx, std::slice::from_ref(x))
    }

    /// `I = n * O_K` for a positive integer `n`.
    pub fn is_principal_integer(&self, n: &BigInt) -> bool {
        *self == IdealHNF::unit().scale(n)
    }

    pub fn is_primitive(&self) -> bool {
        self.c.is_one()
    }

    /// `(N, t)` with `I = Z*N + Z*(t + omega)`, `0 <= t < N`.
    pub fn canonical_basis(&self) -> Result<(BigInt, BigInt)> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        Ok((self.a.clone(), self.b.clone()))
    }

    /// `I^{-1} = (1/N) I'` for primitive `I` of reduced norm `N`.
    pub fn inverse(&self, ctx: &FieldCtx) -> Result<FracIdeal> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let n = self.norm();
        let num = self.conj(ctx);
        assert!(
            self.mul(ctx, &num).is_principal_integer(&n),
            "I * I' = N O_K"
        );
        Ok(FracIdeal { num, den: n })
    }

    pub fn display(&self) -> String {
        format!("[{}, {}+{}*w]", self.a, self.b, self.c)
    }
}

impl fmt::Display for IdealHNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl Serialize for IdealHNF {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.display())
    }
}

impl FracIdeal {
    pub fn integral(num: IdealHNF) -> Self {
        FracIdeal {
            num,
            den: BigInt::one(),
        }
    }

    pub fn contains(&self, ctx: &FieldCtx, x: &QuadElem) -> bool {
        self.num
            .contains(ctx, &x.scale(&BigRational::from_integer(self.den.clone())))
    }
}

/// `A_l = Z*l + Z*omega` for a squarefree divisor `l` of `d_K`.
pub fn a_ell(ctx: &FieldCtx, ell: u64) -> Result<IdealHNF> {
    if ell == 0 || !ctx.disc.is_multiple_of(ell) || !arith::is_squarefree(ell) {
        return Err(Error::BadDivisor(ell.to_string()));
    }
    let ideal = IdealHNF {
        a: BigInt::from(ell),
        b: BigInt::zero(),
        c: BigInt::one(),
    };
    debug_assert!(ideal.is_ideal(ctx));
    Ok(ideal)
}

/// Whether `(1/sqrt k) A_k = O_K`, i.e. `A_k = sqrt(k) O_K` with `sqrt(k)` in `K`.
pub fn scaled_a_ell_is_unit(ctx: &FieldCtx, k: u64) -> Result<bool> {
    let ak = a_ell(ctx, k)?;
    let root = if k == 1 {
        ctx.one()
    } else if k == ctx.m {
        ctx.sqrt_m()
    } else {
        // k squarefree and k != 1, m: sqrt(k) is not in K
        return Ok(false);
    };
    Ok(IdealHNF::principal(ctx, &root)? == ak)
}

/// The ideal generated by the entries of an integral 2x2 matrix.
pub fn content_ideal(ctx: &FieldCtx, l: &[[QuadElem; 2]; 2]) -> Result<IdealHNF> {
    let gens: Vec<QuadElem> = l
        .iter()
        .flatten()
        .filter(|e| !e.is_zero())
        .cloned()
        .collect();
    IdealHNF::from_generators(ctx, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use proptest::prelude::*;

    fn k(m: u64) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    fn hnf(a: i64, b: i64, c: i64) -> IdealHNF {
        IdealHNF {
            a: int(a),
            b: int(b),
            c: int(c),
        }
    }

    #[test]
    fn generators_examples() {
        let k2 = k(2);
        let two_plus = k2.parse_elem("2+sqrt(2)").unwrap();
        assert_eq!(
            IdealHNF::from_generators(&k2, &[k2.int(2), two_plus]).unwrap(),
            hnf(2, 0, 1)
        );
        assert_eq!(
            IdealHNF::from_generators(&k2, &[k2.one()]).unwrap(),
            IdealHNF::unit()
        );
        let k5 = k(5);
        assert_eq!(IdealHNF::principal(&k5, &k5.omega).unwrap(), hnf(5, 0, 1));
        assert_eq!(
            IdealHNF::from_generators(&k5, &[k5.zero()]),
            Err(Error::ZeroIdeal)
        );
        let half = k5.parse_elem("1/2").unwrap();
        assert!(matches!(
            IdealHNF::from_generators(&k5, &[half]),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn generator_order_is_irrelevant() {
        let k6 = k(6);
        let g: Vec<QuadElem> = ["4+sqrt(6)", "10", "3-2*sqrt(6)"]
            .iter()
            .map(|s| k6.parse_elem(s).unwrap())
            .collect();
        let i1 = IdealHNF::from_generators(&k6, &g).unwrap();
        let rev: Vec<_> = g.iter().rev().cloned().collect();
        assert_eq!(i1, IdealHNF::from_generators(&k6, &rev).unwrap());
    }

    #[test]
    fn products_of_a_ell() {
        let k6 = k(6);
        let a2 = a_ell(&k6, 2).unwrap();
        let a3 = a_ell(&k6, 3).unwrap();
        let a6 = a_ell(&k6, 6).unwrap();
        assert_eq!(a2.mul(&k6, &a3), a6);
        assert_eq!(a2.mul(&k6, &IdealHNF::unit()), a2);
        assert_eq!(a2.norm(), int(2));
        assert_eq!(a_ell(&k6, 1).unwrap(), IdealHNF::unit());
        assert!(matches!(a_ell(&k6, 4), Err(Error::BadDivisor(_))));
        assert!(matches!(a_ell(&k6, 5), Err(Error::BadDivisor(_))));
    }

    #[test]
    fn a_ell_scaling_identities() {
        for m in [2u64, 3, 5, 6, 7, 10, 13, 15, 17, 21, 33] {
            let ctx = k(m);
            let divs = arith::squarefree_divisors(ctx.disc);
            for &kk in &divs {
                let ak = a_ell(&ctx, kk).unwrap();
                // A_k^2 = k O_K for every ramified k; (1/sqrt k) A_k = O_K only for k in {1, m}
                assert!(
                    ak.mul(&ctx, &ak).is_principal_integer(&int(kk as i64)),
                    "m={m} k={kk}"
                );
                assert_eq!(
                    scaled_a_ell_is_unit(&ctx, kk).unwrap(),
                    kk == 1 || kk == m,
                    "m={m} k={kk}"
                );
                for &ll in &divs {
                    let g = num_integer::gcd(kk, ll);
                    let f = kk * ll / (g * g);
                    let lhs = ak.mul(&ctx, &a_ell(&ctx, ll).unwrap());
                    assert_eq!(
                        lhs,
                        a_ell(&ctx, f).unwrap().scale(&int(g as i64)),
                        "m={m} k={kk} l={ll}"
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_basis_and_inverse() {
        let k5 = k(5);
        // brute force: t in 0..11 with 11 | N(t + w)
        let ts: Vec<i64> = (0..11)
            .filter(|&t| {
                let n = (&k5.int(t) + &k5.omega).norm().to_integer();
                (n % int(11)).is_zero()
            })
            .collect();
        assert_eq!(ts, vec![1, 5]);
        let i = IdealHNF::from_canonical(&k5, 11, 1).unwrap();
        assert_eq!(i.canonical_basis().unwrap(), (int(11), int(1)));
        assert_eq!(
            IdealHNF::unit().canonical_basis().unwrap(),
            (int(1), int(0))
        );
        assert_eq!(
            IdealHNF::unit().scale(&int(2)).canonical_basis(),
            Err(Error::NotPrimitive)
        );
        let inv = i.inverse(&k5).unwrap();
        assert_eq!(inv.den, int(11));
        assert!(i.mul(&k5, &inv.num).is_principal_integer(&int(11)));

        let k6 = k(6);
        let a2 = a_ell(&k6, 2).unwrap();
        let inv = a2.inverse(&k6).unwrap();
        assert_eq!(inv.den, int(2));
        assert_eq!(inv.num, a2.conj(&k6));
        assert_eq!(
            IdealHNF::unit().inverse(&k6).unwrap(),
            FracIdeal::integral(IdealHNF::unit())
        );
        assert_eq!(
            IdealHNF::unit().scale(&int(3)).inverse(&k6),
            Err(Error::NotPrimitive)
        );
    }

    #[test]
    fn content_ideals() {
        let k2 = k(2);
        let e = |s: &str| k2.parse_elem(s).unwrap();
        assert_eq!(
            content_ideal(&k2, &[[e("2"), e("0")], [e("0"), e("1")]]).unwrap(),
            IdealHNF::unit()
        );
        let v2 = [[e("2"), e("2+sqrt(2)")], [e("2-sqrt(2)"), e("2")]];
        let a2 = a_ell(&k2, 2).unwrap();
        assert_eq!(content_ideal(&k2, &v2).unwrap(), a2);
        assert!(a2.mul(&k2, &a2).is_principal_integer(&int(2)));
        assert_eq!(
            content_ideal(&k2, &[[e("3"), e("0")], [e("0"), e("3")]]).unwrap(),
            IdealHNF::unit().scale(&int(3))
        );
    }

    #[test]
    fn membership() {
        let k5 = k(5);
        let i = IdealHNF::from_canonical(&k5, 11, 1).unwrap();
        let inv = i.inverse(&k5).unwrap();
        // I^{-1} = (1/11) I', and 1 + w' lies in I' but 1 + w does not
        let x = (&k5.one() + &k5.omega.conj()).scale(&arith::ratio(1, 11));
        assert!(inv.contains(&k5, &x));
        let y = (&k5.one() + &k5.omega).scale(&arith::ratio(1, 11));
        assert!(!inv.contains(&k5, &y));
        assert!(!i.contains(&k5, &x));
        assert!(i.contains(&k5, &k5.int(11)));
        assert!(!i.contains(&k5, &k5.int(1)));
    }

    fn ideal_strategy() -> impl Strategy<Value = (u64, Vec<(i64, i64)>)> {
        (
            prop::sample::select(vec![2u64, 3, 5, 6, 13]),
            prop::collection::vec((-12i64..12, -12i64..12), 1..3),
        )
    }

    fn build(ctx: &FieldCtx, gens: &[(i64, i64)]) -> Option<IdealHNF> {
        let g: Vec<_> = gens
            .iter()
            .map(|&(p, q)| ctx.from_coords(&int(p), &int(q)))
            .collect();
        IdealHNF::from_generators(ctx, &g).ok()
    }

    proptest! {
        #[test]
        fn multiplication_laws(
            (m, g1) in ideal_strategy(),
            g2 in prop::collection::vec((-12i64..12, -12i64..12), 1..3),
            g3 in prop::collection::vec((-12i64..12, -12i64..12), 1..3),
        ) {
            let ctx = k(m);
            let (Some(i), Some(j), Some(l)) = (build(&ctx, &g1), build(&ctx, &g2), build(&ctx, &g3)) else {
                return Ok(());
            };
            prop_assert!(i.is_ideal(&ctx));
            prop_assert_eq!(i.mul(&ctx, &j), j.mul(&ctx, &i));
            prop_assert_eq!(i.mul(&ctx, &j).mul(&ctx, &l), i.mul(&ctx, &j.mul(&ctx, &l)));
            prop_assert_eq!(i.mul(&ctx, &j).norm(), i.norm() * j.norm());
        }

        #[test]
        fn primitive_inverse(m in prop::sample::select(vec![2u64, 3, 5, 6, 13]), n in 1u64..40, t in 0i64..40) {
            let ctx = k(m);
            let Ok(i) = IdealHNF::from_canonical(&ctx, n, t) else { return Ok(()); };
            let inv = i.inverse(&ctx).unwrap();
            prop_assert!(i.mul(&ctx, &inv.num).is_principal_integer(&inv.den));
        }
    }
}
