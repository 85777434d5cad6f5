//! Seeded random words in elementary matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{atkin_lehner, GammaICtx, Mat2, SigmaElem};
use crate::arith;
use crate::error::Result;
use crate::ideals::{self, IdealHNF};
use crate::quadfield::{FieldCtx, QuadElem};

pub const MAX_WORD: usize = 12;
pub const MAX_HEIGHT: i64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleKind {
    Gamma,
    GammaI,
    PrincipalCongruence(u64),
    Cor2a(u64),
    Cor3(u64),
    /// Words in `Gamma_K` and the Atkin-Lehner matrices.
    GammaStar,
    /// Words that also use non-integral translations and `(1/sqrt l) diag(l, 1)`.
    Sigma,
}

impl fmt::Display for SampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleKind::Gamma => write!(f, "gamma"),
            SampleKind::GammaI => write!(f, "gamma_I"),
            SampleKind::PrincipalCongruence(n) => write!(f, "principal_congruence({n})"),
            SampleKind::Cor2a(n) => write!(f, "cor2a({n})"),
            SampleKind::Cor3(n) => write!(f, "cor3({n})"),
            SampleKind::GammaStar => write!(f, "gamma_star"),
            SampleKind::Sigma => write!(f, "sigma"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    Upper(QuadElem),
    Lower(QuadElem),
    /// `diag(eps_0^k, eps_0^-k)`.
    Unit(i32),
    AtkinLehner(u64),
    /// `(1/sqrt l) diag(l, 1)`.
    Scale(u64),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Upper(b) => write!(f, "U({b})"),
            Letter::Lower(c) => write!(f, "L({c})"),
            Letter::Unit(k) => write!(f, "E^{k}"),
            Letter::AtkinLehner(l) => write!(f, "V{l}"),
            Letter::Scale(l) => write!(f, "D{l}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub elem: SigmaElem,
    pub word: Vec<Letter>,
}

impl Sample {
    pub fn word_string(&self) -> String {
        let parts: Vec<String> = self.word.iter().map(|l| l.to_string()).collect();
        parts.join(" ")
    }
}

type Basis = (QuadElem, QuadElem);

/// Precomputed letter sources for one kind over one field.
#[derive(Clone, Debug)]
pub struct Sampler {
    ctx: FieldCtx,
    kind: SampleKind,
    upper: Basis,
    lower: Basis,
    unit_power: Option<i32>,
    eps: QuadElem,
    atkin_lehner: Vec<(u64, SigmaElem)>,
}

fn basis_of(ctx: &FieldCtx, ideal: &IdealHNF) -> Basis {
    ideal.basis(ctx)
}

fn congruent_to_sign(ctx: &FieldCtx, e: &QuadElem, ideal: &IdealHNF) -> bool {
    ideal.contains(ctx, &(e - &ctx.one())) || ideal.contains(ctx, &(e + &ctx.one()))
}

impl Sampler {
    pub fn new(ctx: &FieldCtx, kind: SampleKind, ictx: Option<&GammaICtx>) -> Result<Self> {
        let ok = basis_of(ctx, &IdealHNF::unit());
        let eps = ctx.fundamental_unit();
        let smallest_power =
            |good: &dyn Fn(&QuadElem) -> bool| (1..=12).find(|&k| good(&eps.pow(k as u32)));
        let (upper, lower, unit_power) = match kind {
            SampleKind::Gamma | SampleKind::GammaStar | SampleKind::Sigma => {
                (ok.clone(), ok, Some(1))
            }
            SampleKind::GammaI => {
                let unit = GammaICtx::unit(ctx);
                let ictx = ictx.unwrap_or(&unit);
                let up = basis_of(ctx, &ictx.ideal);
                let inv = basis_of(ctx, &ictx.inv.num);
                let d = BigRational::new(BigInt::from(1), ictx.inv.den.clone());
                (up, (inv.0.scale(&d), inv.1.scale(&d)), Some(1))
            }
            SampleKind::PrincipalCongruence(n) => {
                let j = IdealHNF::unit().scale(&BigInt::from(n));
                let p = smallest_power(&|e| congruent_to_sign(ctx, e, &j));
                (basis_of(ctx, &j), basis_of(ctx, &j), p)
            }
            SampleKind::Cor2a(n) => {
                let j = IdealHNF::unit().scale(&BigInt::from(n));
                let nn = BigInt::from(n);
                let p = smallest_power(&|e| (e.norm().to_integer() - 1) % &nn == BigInt::from(0));
                (ok, basis_of(ctx, &j), p)
            }
            SampleKind::Cor3(n) => {
                let a = ideals::a_ell(ctx, n)?;
                let p = smallest_power(&|e| congruent_to_sign(ctx, e, &a));
                (basis_of(ctx, &a), basis_of(ctx, &a), p)
            }
        };
        let atkin_lehner = match kind {
            SampleKind::GammaStar | SampleKind::Sigma => arith::squarefree_divisors(ctx.disc)
                .into_iter()
                .filter(|&l| l > 1)
                .filter_map(|l| atkin_lehner(ctx, l).ok().map(|v| (l, v)))
                .collect(),
            _ => Vec::new(),
        };
        Ok(Sampler {
            ctx: ctx.clone(),
            kind,
            upper,
            lower,
            unit_power,
            eps,
            atkin_lehner,
        })
    }

    pub fn kind(&self) -> SampleKind {
        self.kind
    }

    fn draw(rng: &mut ChaCha8Rng, b: &Basis) -> QuadElem {
        let x = arith::rat(rng.gen_range(-MAX_HEIGHT..=MAX_HEIGHT));
        let y = arith::rat(rng.gen_range(-MAX_HEIGHT..=MAX_HEIGHT));
        &b.0.scale(&x) + &b.1.scale(&y)
    }

    fn letter(&self, rng: &mut ChaCha8Rng) -> Letter {
        let extra = matches!(self.kind, SampleKind::Sigma);
        let choices = 3 + usize::from(!self.atkin_lehner.is_empty()) + 2 * usize::from(extra);
        match rng.gen_range(0..choices) {
            0 => Letter::Upper(Self::draw(rng, &self.upper)),
            1 => Letter::Lower(Self::draw(rng, &self.lower)),
            2 => match self.unit_power {
                Some(k) => Letter::Unit(if rng.gen_bool(0.5) { k } else { -k }),
                None => Letter::Upper(Self::draw(rng, &self.upper)),
            },
            3 if !self.atkin_lehner.is_empty() => {
                let i = rng.gen_range(0..self.atkin_lehner.len());
                Letter::AtkinLehner(self.atkin_lehner[i].0)
            }
            c if extra && c + 1 == choices => Letter::Scale(rng.gen_range(2..=9)),
            _ => {
                let q = arith::ratio(1, rng.gen_range(1..=3));
                Letter::Upper(Self::draw(rng, &self.upper).scale(&q))
            }
        }
    }

    pub fn letter_matrix(&self, letter: &Letter) -> SigmaElem {
        let ctx = &self.ctx;
        let (one, zero) = (ctx.one(), ctx.zero());
        let sl2 = |l: Mat2| SigmaElem::from_sl2(ctx, l).expect("det 1");
        match letter {
            Letter::Upper(b) => sl2([[one.clone(), b.clone()], [zero.clone(), one]]),
            Letter::Lower(c) => sl2([[one.clone(), zero.clone()], [c.clone(), one]]),
            Letter::Unit(k) => {
                let e = self.eps.pow(k.unsigned_abs());
                let e = if *k < 0 { e.inv().expect("unit") } else { e };
                let ei = e.inv().expect("unit");
                sl2([[e, zero.clone()], [zero, ei]])
            }
            Letter::AtkinLehner(l) => self
                .atkin_lehner
                .iter()
                .find(|(x, _)| x == l)
                .map(|(_, v)| v.clone())
                .expect("known divisor"),
            Letter::Scale(l) => {
                let l = *l as i64;
                SigmaElem::new(
                    ctx,
                    [[ctx.int(l), zero.clone()], [zero, one]],
                    arith::rat(l),
                )
                .expect("det l")
            }
        }
    }

    pub fn sample(&self, seed: u64) -> Sample {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let len = rng.gen_range(1..=MAX_WORD);
        let word: Vec<Letter> = (0..len).map(|_| self.letter(&mut rng)).collect();
        let elem = word.iter().fold(SigmaElem::identity(&self.ctx), |acc, l| {
            acc.mul(&self.ctx, &self.letter_matrix(l))
        });
        Sample { elem, word }
    }
}

/// One sample of the given kind; builds a throwaway [`Sampler`].
pub fn sample(
    ctx: &FieldCtx,
    kind: SampleKind,
    seed: u64,
    ictx: Option<&GammaICtx>,
) -> Result<Sample> {
    Ok(Sampler::new(ctx, kind, ictx)?.sample(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modgroup::{cor2a_lhs, cor2b_lhs, cor3_lhs, in_gamma, in_gamma_i, in_gamma_star};

    fn k(m: u64) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    #[test]
    fn deterministic_in_seed() {
        let ctx = k(5);
        let s = Sampler::new(&ctx, SampleKind::Sigma, None).unwrap();
        assert_eq!(s.sample(42).elem, s.sample(42).elem);
        assert_eq!(s.sample(42).word, s.sample(42).word);
    }

    #[test]
    fn gamma_samples_are_in_gamma() {
        for m in [2u64, 5, 6] {
            let ctx = k(m);
            let s = Sampler::new(&ctx, SampleKind::Gamma, None).unwrap();
            for seed in 0..30 {
                assert!(in_gamma(&s.sample(seed).elem));
            }
        }
    }

    #[test]
    fn gamma_star_samples_are_in_gamma_star() {
        let ctx = k(6);
        let s = Sampler::new(&ctx, SampleKind::GammaStar, None).unwrap();
        for seed in 0..30 {
            assert!(in_gamma_star(&ctx, &s.sample(seed).elem));
        }
    }

    #[test]
    fn gamma_i_samples() {
        let ctx = k(5);
        let ictx = GammaICtx::new(&ctx, IdealHNF::from_canonical(&ctx, 11, 1).unwrap()).unwrap();
        let s = Sampler::new(&ctx, SampleKind::GammaI, Some(&ictx)).unwrap();
        for seed in 0..30 {
            assert!(in_gamma_i(&ctx, &s.sample(seed).elem, &ictx));
        }
    }

    #[test]
    fn congruence_samples() {
        let ctx = k(5);
        for n in [2u64, 3, 5] {
            let pc = Sampler::new(&ctx, SampleKind::PrincipalCongruence(n), None).unwrap();
            let c2 = Sampler::new(&ctx, SampleKind::Cor2a(n), None).unwrap();
            for seed in 0..20 {
                assert!(cor2b_lhs(&ctx, &pc.sample(seed).elem, n).unwrap());
                assert!(cor2a_lhs(&ctx, &c2.sample(seed).elem, n).unwrap());
            }
        }
        let c3 = Sampler::new(&ctx, SampleKind::Cor3(5), None).unwrap();
        for seed in 0..20 {
            assert!(cor3_lhs(&ctx, &c3.sample(seed).elem, 5).unwrap());
        }
    }
}
