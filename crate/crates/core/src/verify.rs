//! Randomized property suites shared by the `verify` command and the
//! acceptance tests. Every check is exact.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::action;
use crate::arith;
use crate::error::Result;
use crate::ideals::{self, IdealHNF};
use crate::isomap::{self, BasisCtx};
use crate::modgroup::{self, GammaICtx, Letter, NormalizerClass, SampleKind, Sampler, SigmaElem};
use crate::ortho4::{self, Mat4};
use crate::quadfield::{FieldCtx, QuadElem};

/// A deliberate defect used to check that the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Negates every image matrix.
    Sign,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    #[serde(serialize_with = "as_string")]
    pub m: u64,
    #[serde(serialize_with = "as_string")]
    pub seed: u64,
    pub kind: String,
    pub word: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteResult {
    #[serde(serialize_with = "as_string")]
    pub m: u64,
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteResult {
    fn new(m: u64, suite: &str) -> Self {
        SuiteResult {
            m,
            suite: suite.to_string(),
            passed: 0,
            failed: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, ok: bool, cx: impl FnOnce() -> Counterexample) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(cx());
            }
        }
    }

    fn fixed(&mut self, ok: bool, what: &str) {
        let m = self.m;
        self.record(ok, || Counterexample {
            m,
            seed: 0,
            kind: "fixed".into(),
            word: String::new(),
            detail: what.to_string(),
        });
    }
}

fn as_string<S: serde::Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

const MAX_COUNTEREXAMPLES: usize = 5;

pub const SUITES: [&str; 12] = [
    "cosets",
    "normalizer",
    "unit_kernel",
    "oracle",
    "homomorphism",
    "containment",
    "kernel_criterion",
    "action",
    "congruence",
    "ideal_kernel",
    "hn_conjugation",
    "roundtrip",
];

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub trials: usize,
    pub fault: Option<Fault>,
}

/// Field data reused by all suites for one `m`.
pub struct FieldRun {
    pub ctx: FieldCtx,
    pub basis: BasisCtx,
    pub split_ideal: Option<IdealHNF>,
    cfg: Config,
}

type Check<'a> = dyn Fn(&SigmaElem, u64) -> std::result::Result<(), String> + Sync + 'a;

/// The least split prime `p` not dividing `d_K` and its ideal `(p, t + w)`.
pub fn split_prime_ideal(ctx: &FieldCtx) -> Option<IdealHNF> {
    (3u64..200)
        .filter(|&p| {
            arith::is_squarefree(p) && arith::factor(p).len() == 1 && p == arith::factor(p)[0].0
        })
        .filter(|p| !ctx.disc.is_multiple_of(*p))
        .find_map(|p| {
            (0..p as i64)
                .find(|&t| (&ctx.int(t) + &ctx.omega).norm().to_integer() % p as i64 == 0.into())
                .and_then(|t| IdealHNF::from_canonical(ctx, p, t).ok())
        })
}

impl FieldRun {
    pub fn new(m: u64, cfg: Config) -> Result<Self> {
        let ctx = FieldCtx::new(m)?;
        let basis = BasisCtx::standard(&ctx);
        let split_ideal = split_prime_ideal(&ctx);
        Ok(FieldRun {
            ctx,
            basis,
            split_ideal,
            cfg,
        })
    }

    fn image(&self, m: &SigmaElem, b: &BasisCtx) -> Result<Mat4> {
        let u = isomap::phi_fast(m, b)?;
        Ok(match self.cfg.fault {
            Some(Fault::Sign) => ortho4::neg(&u),
            None => u,
        })
    }

    fn seeds(&self, stream: u64) -> impl Iterator<Item = u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(self.ctx.m * 1024 + stream);
        (0..self.cfg.trials).map(move |_| rng.next_u64())
    }

    /// Runs `check` on `trials` samples; failures are shrunk by dropping letters.
    fn sampled(&self, res: &mut SuiteResult, sampler: &Sampler, stream: u64, check: &Check<'_>) {
        let seeds: Vec<u64> = self.seeds(stream).collect();
        let outcomes: Vec<(u64, std::result::Result<(), String>)> = seeds
            .par_iter()
            .map(|&seed| {
                let s = sampler.sample(seed);
                (seed, check(&s.elem, seed))
            })
            .collect();
        for (seed, out) in outcomes {
            let m = self.ctx.m;
            res.record(out.is_ok(), || {
                let word = sampler.sample(seed).word;
                let (word, detail) =
                    shrink(&self.ctx, sampler, word, seed, check, out.unwrap_err());
                let text: Vec<String> = word.iter().map(|l| l.to_string()).collect();
                Counterexample {
                    m,
                    seed,
                    kind: sampler.kind().to_string(),
                    word: text.join(" "),
                    detail,
                }
            });
        }
    }

    pub fn run(&self, suite: &str) -> SuiteResult {
        let mut res = SuiteResult::new(self.ctx.m, suite);
        match suite {
            "cosets" => self.cosets(&mut res),
            "normalizer" => self.normalizer(&mut res),
            "unit_kernel" => self.unit_kernel(&mut res),
            "oracle" => self.oracle(&mut res),
            "homomorphism" => self.homomorphism(&mut res),
            "containment" => self.containment(&mut res),
            "kernel_criterion" => self.kernel_criterion(&mut res),
            "action" => self.action(&mut res),
            "congruence" => self.congruence(&mut res, &[2, 3, 5]),
            "ideal_kernel" => self.ideal_kernel(&mut res),
            "hn_conjugation" => self.hn_conjugation(&mut res),
            "roundtrip" => self.roundtrip(&mut res),
            other => res.fixed(false, &format!("unknown suite {other}")),
        }
        res
    }

    fn sampler(&self, kind: SampleKind, ictx: Option<&GammaICtx>) -> Option<Sampler> {
        Sampler::new(&self.ctx, kind, ictx).ok()
    }

    pub fn cosets(&self, res: &mut SuiteResult) {
        let ctx = &self.ctx;
        match modgroup::coset_count(ctx) {
            Ok(c) => res.fixed(
                c == modgroup::index_formula(ctx),
                &format!("coset count {c}"),
            ),
            Err(e) => res.fixed(false, &e.to_string()),
        }
        let gamma = GammaICtx::unit(ctx);
        let ideals: Vec<GammaICtx> = std::iter::once(gamma)
            .chain(
                self.split_ideal
                    .iter()
                    .filter_map(|i| GammaICtx::new(ctx, i.clone()).ok()),
            )
            .collect();
        for ell in arith::squarefree_divisors(ctx.disc) {
            let trivial = ell == 1 || ell == ctx.m;
            match modgroup::atkin_lehner(ctx, ell) {
                Ok(v) => {
                    res.fixed(
                        modgroup::in_gamma(&v) == trivial,
                        &format!("V_{ell} in Gamma"),
                    );
                    res.fixed(mat_det_is_ell(&v), &format!("det V_{ell}"));
                }
                Err(e) => res.fixed(false, &format!("V_{ell}: {e}")),
            }
            for ictx in &ideals {
                match modgroup::atkin_lehner_ideal(ctx, ictx, ell) {
                    Ok(v) => res.fixed(
                        modgroup::in_gamma_i(ctx, &v, ictx) == trivial,
                        &format!("V_{ell} in Gamma(I), I = {}", ictx.ideal),
                    ),
                    Err(e) => res.fixed(false, &format!("ideal V_{ell}: {e}")),
                }
            }
        }
    }

    pub fn normalizer(&self, res: &mut SuiteResult) {
        let ctx = &self.ctx;
        match modgroup::normalizer_class(ctx) {
            Ok(NormalizerClass::Equal) => {}
            Ok(NormalizerClass::Extended { m0, .. }) => {
                res.fixed(m0.in_normalizer(ctx), "M0 in normalizer");
                res.fixed(!m0.in_gamma_star(ctx), "M0 not in Gamma*");
                let t = [[ctx.one(), ctx.omega.clone()], [ctx.zero(), ctx.one()]];
                let c = m0.conjugate_matrix(&t);
                let integral = c.iter().flatten().all(|e| ctx.is_integral(e));
                res.fixed(integral, "M0 T M0^-1 in Gamma");
            }
            Err(e) => res.fixed(false, &e.to_string()),
        }
        let Some(s) = self.sampler(SampleKind::GammaStar, None) else {
            return;
        };
        let unit = GammaICtx::unit(ctx);
        self.sampled(res, &s, 1, &|x, _| {
            let n = x.to_normalizer(ctx);
            ensure(n.in_normalizer(ctx), "not in normalizer")?;
            ensure(n.in_gamma_star(ctx), "not in Gamma*")?;
            ensure(
                modgroup::in_gamma_star_i(ctx, x, &unit),
                "ideal criterion with I = O_K disagrees",
            )
        });
    }

    pub fn unit_kernel(&self, res: &mut SuiteResult) {
        let ctx = &self.ctx;
        for (k, eps) in totally_positive_powers(ctx, 5).into_iter().enumerate() {
            match modgroup::unit_kernel_check(ctx, &eps) {
                Ok(r) => {
                    res.fixed(
                        r.divides,
                        &format!("power {}: q = {} does not divide d_K", k + 1, r.q),
                    );
                    res.fixed(
                        modgroup::in_gamma_star(ctx, &r.matrix),
                        &format!("power {}: matrix not in Gamma*", k + 1),
                    );
                }
                Err(e) => res.fixed(false, &e.to_string()),
            }
        }
    }

    pub fn oracle(&self, res: &mut SuiteResult) {
        let Some(s) = self.sampler(SampleKind::Sigma, None) else {
            return;
        };
        let swapped = BasisCtx::new(&self.ctx, self.ctx.omega.clone(), self.ctx.one())
            .expect("(w, 1) is a basis");
        let mut bases = vec![self.basis.clone(), swapped];
        if let Some(b) = self
            .split_ideal
            .as_ref()
            .and_then(|i| BasisCtx::for_ideal(&self.ctx, i).ok())
        {
            bases.push(b);
        }
        self.sampled(res, &s, 2, &|x, _| {
            for b in &bases {
                let u = self.image(x, b).map_err(|e| e.to_string())?;
                let o = isomap::base_change_oracle(x, b).map_err(|e| e.to_string())?;
                ensure(u == o, "fast and base-change images differ")?;
                ensure(b.s1.is_orthogonal(&u), "image not orthogonal")?;
                ensure(b.s1.in_so0(&u) == Ok(true), "image not in SO0")?;
            }
            Ok(())
        });
    }

    fn generators(&self, with_sigma: bool) -> Vec<SigmaElem> {
        let ctx = &self.ctx;
        let sl2 = |l| SigmaElem::from_sl2(ctx, l).expect("det 1");
        let eps = ctx.fundamental_unit();
        let mut out = vec![
            sl2([[ctx.one(), ctx.one()], [ctx.zero(), ctx.one()]]),
            sl2([[ctx.one(), ctx.omega.clone()], [ctx.zero(), ctx.one()]]),
            sl2([[ctx.one(), ctx.zero()], [ctx.one(), ctx.one()]]),
            sl2([
                [eps.clone(), ctx.zero()],
                [ctx.zero(), eps.inv().expect("unit")],
            ]),
        ];
        if with_sigma {
            for ell in arith::squarefree_divisors(ctx.disc) {
                out.extend(modgroup::atkin_lehner(ctx, ell).ok());
            }
            out.push(
                SigmaElem::new(
                    ctx,
                    [[ctx.int(3), ctx.zero()], [ctx.zero(), ctx.one()]],
                    arith::rat(3),
                )
                .unwrap(),
            );
        }
        out
    }

    pub fn homomorphism(&self, res: &mut SuiteResult) {
        let ctx = &self.ctx;
        let b = &self.basis;
        for (kind, stream, signed) in [(SampleKind::Gamma, 3, false), (SampleKind::Sigma, 4, true)]
        {
            let Some(s) = self.sampler(kind, None) else {
                continue;
            };
            let gens = self.generators(signed);
            self.sampled(res, &s, stream, &|x, seed| {
                let g = &gens[(seed % gens.len() as u64) as usize];
                let lhs = self.image(&x.mul(ctx, g), b).map_err(|e| e.to_string())?;
                let rhs = ortho4::mul(
                    &self.image(x, b).map_err(|e| e.to_string())?,
                    &self.image(g, b).map_err(|e| e.to_string())?,
                );
                let ok = lhs == rhs || (signed && lhs == ortho4::neg(&rhs));
                ensure(ok, &format!("phi(x g) != phi(x) phi(g) for g = {g}"))
            });
        }
    }

    pub fn containment(&self, res: &mut SuiteResult) {
        let ctx = &self.ctx;
        let b = &self.basis;
        if let Some(s) = self.sampler(SampleKind::Gamma, None) {
            self.sampled(res, &s, 5, &|x, _| {
                let u = self.image(x, b).map_err(|e| e.to_string())?;
                ensure(
                    b.s1.in_discriminant_kernel(&u),
                    "Gamma image not in D(S1; Z)",
                )
            });
        }
        if let Some(s) = self.sampler(SampleKind::GammaStar, None) {
            self.sampled(res, &s, 6, &|x, _| {
                let u = self.image(x, b).map_err(|e| e.to_string())?;
                ensure(b.s1.in_so0_z(&u), "Gamma* image not in SO0(S1; Z)")
            });
        }
        for ell in arith::squarefree_divisors(ctx.disc) {
            let Ok(v) = modgroup::atkin_lehner(ctx, ell) else {
                res.fixed(false, &format!("V_{ell} unavailable"));
                continue;
            };
            let Ok(u) = self.image(&v, b) else {
                res.fixed(false, &format!("V_{ell} image"));
                continue;
            };
            res.fixed(
                b.s1.in_so0_z(&u),
                &format!("V_{ell} image not in SO0(S1; Z)"),
            );
            let trivial = ell == 1 || ell == ctx.m;
            res.fixed(
                b.s1.in_discriminant_kernel(&u) == trivial,
                &format!("V_{ell} discriminant kernel membership"),
            );
        }
    }

    pub fn kernel_criterion(&self, res: &mut SuiteResult) {
        let Some(s) = self.sampler(SampleKind::GammaStar, None) else {
            return;
        };
        let b = &self.basis;
        self.sampled(res, &s, 7, &|x, _| {
            let u = self.image(x, b).map_err(|e| e.to_string())?;
            let fm = isomap::dk_criterion_fm(x, b).map_err(|e| e.to_string())?;
            ensure(
                fm == isomap::k_block_congruence(&u, b),
                "F_M criterion and K-block congruence differ",
            )?;
            ensure(
                fm == b.s1.in_discriminant_kernel(&u),
                "F_M criterion and discriminant kernel differ",
            )
        });
    }

    pub fn action(&self, res: &mut SuiteResult) {
        let Some(s) = self.sampler(SampleKind::Sigma, None) else {
            return;
        };
        let b = &self.basis;
        let ctx = &self.ctx;
        let g = SigmaElem::from_sl2(
            ctx,
            [
                [ctx.one(), ctx.omega.clone()],
                [ctx.one(), &ctx.omega + &ctx.one()],
            ],
        )
        .unwrap();
        self.sampled(res, &s, 8, &|x, seed| {
            let z = action::sample_point(b, seed);
            let u = self.image(x, b).map_err(|e| e.to_string())?;
            ensure(
                action::check_compat_matrix(x, &u, b, &z),
                "actions are not compatible",
            )?;
            let ug = self.image(&g, b).map_err(|e| e.to_string())?;
            let sm = &b.s1.s;
            let gz = action::ortho_action(&ug, &z, sm).map_err(|e| e.to_string())?;
            ensure(
                action::in_base_changed_h2(b, &gz),
                "image left the half-space",
            )?;
            let lhs = action::automorphy(&ortho4::mul(&u, &ug), &z, sm);
            let rhs = action::automorphy(&u, &gz, sm).mul(&action::automorphy(&ug, &z, sm));
            ensure(lhs == rhs, "automorphy factor is not a cocycle")
        });
    }

    pub fn congruence(&self, res: &mut SuiteResult, levels: &[u64]) {
        let ctx = &self.ctx;
        let b = &self.basis;
        for (i, &n) in levels.iter().enumerate() {
            let stream = 20 + 8 * i as u64;
            let kinds = [
                SampleKind::Gamma,
                SampleKind::Cor2a(n),
                SampleKind::PrincipalCongruence(n),
            ];
            for (j, kind) in kinds.into_iter().enumerate() {
                let Some(s) = self.sampler(kind, None) else {
                    continue;
                };
                self.sampled(res, &s, stream + j as u64, &|x, _| {
                    let u = self.image(x, b).map_err(|e| e.to_string())?;
                    let a = modgroup::cor2a_lhs(ctx, x, n).map_err(|e| e.to_string())?;
                    ensure(
                        a == isomap::cor2a_rhs(&u, n, b),
                        &format!("cor2a({n}) sides differ: lhs {a}"),
                    )?;
                    let p = modgroup::cor2b_lhs(ctx, x, n).map_err(|e| e.to_string())?;
                    ensure(
                        p == isomap::cor2b_rhs(&u, n, b),
                        &format!("cor2b({n}) sides differ: lhs {p}"),
                    )
                });
            }
            if !ctx.disc.is_multiple_of(n) {
                continue;
            }
            let Ok(bn) = ideals::a_ell(ctx, n).and_then(|a| BasisCtx::for_ideal(ctx, &a)) else {
                continue;
            };
            for (j, kind) in [SampleKind::Gamma, SampleKind::Cor3(n)]
                .into_iter()
                .enumerate()
            {
                let Some(s) = self.sampler(kind, None) else {
                    continue;
                };
                self.sampled(res, &s, stream + 3 + j as u64, &|x, _| {
                    let u = self.image(x, &bn).map_err(|e| e.to_string())?;
                    let l = modgroup::cor3_lhs(ctx, x, n).map_err(|e| e.to_string())?;
                    ensure(
                        l == isomap::cor3_rhs(&u, n, &bn),
                        &format!("cor3({n}) sides differ: lhs {l}"),
                    )
                });
            }
        }
    }

    pub fn ideal_kernel(&self, res: &mut SuiteResult) {
        let ctx = &self.ctx;
        let Some(ideal) = self.split_ideal.clone() else {
            return;
        };
        let Ok(ictx) = GammaICtx::new(ctx, ideal.clone()) else {
            return;
        };
        let Ok(b) = BasisCtx::for_ideal(ctx, &ideal) else {
            return;
        };
        let n = b.norm();
        let h = ortho4::conjugator(ortho4::Conjugator::H, u64::try_from(&n).unwrap_or(1));
        let psi = |x: &SigmaElem| self.image(x, &b).map(|u| ortho4::conjugate(&u, &h));
        if let Some(s) = self.sampler(SampleKind::GammaI, Some(&ictx)) {
            self.sampled(res, &s, 60, &|x, _| {
                let u = psi(x).map_err(|e| e.to_string())?;
                ensure(
                    b.t1.in_discriminant_kernel(&u),
                    "Gamma(I) image not in D(T1; Z)",
                )
            });
        }
        for ell in arith::squarefree_divisors(ctx.disc) {
            let Ok(v) = modgroup::atkin_lehner_ideal(ctx, &ictx, ell) else {
                res.fixed(false, &format!("ideal V_{ell} unavailable"));
                continue;
            };
            let Ok(u) = psi(&v) else { continue };
            let trivial = ell == 1 || ell == ctx.m;
            res.fixed(
                b.t1.in_so0_z(&u),
                &format!("ideal V_{ell} image not in SO0(T1; Z)"),
            );
            res.fixed(
                b.t1.in_discriminant_kernel(&u) == trivial,
                &format!("ideal V_{ell} kernel membership"),
            );
        }
    }

    pub fn hn_conjugation(&self, res: &mut SuiteResult) {
        let ctx = &self.ctx;
        let mut cases = vec![(IdealHNF::unit(), 2u64)];
        if ctx.disc.is_multiple_of(2) {
            cases.push((ideals::a_ell(ctx, 2).expect("2 | d_K"), 3));
        }
        for (i, (ideal, n)) in cases.into_iter().enumerate() {
            let Ok(ictx) = GammaICtx::new(ctx, ideal.clone()) else {
                continue;
            };
            let Ok(b) = BasisCtx::for_ideal(ctx, &ideal) else {
                continue;
            };
            let Some(s) = self.sampler(SampleKind::GammaI, Some(&ictx)) else {
                continue;
            };
            let nq = arith::rat(n as i64);
            self.sampled(res, &s, 70 + i as u64, &|x, _| {
                // x in Gamma(I)  ->  [[a, n b], [c/n, d]] in Gamma(nI)
                let l = &x.l;
                let up = [
                    [l[0][0].clone(), l[0][1].scale(&nq)],
                    [l[1][0].scale(&nq.recip()), l[1][1].clone()],
                ];
                let y = SigmaElem::new(
                    ctx,
                    up,
                    num_rational::BigRational::from_integer(x.ell.clone()),
                )
                .map_err(|e| e.to_string())?;
                ensure(
                    isomap::hn_conjugation_check(&y, n, &b) == Ok(true),
                    "H_n conjugation identity fails",
                )
            });
        }
    }

    pub fn roundtrip(&self, res: &mut SuiteResult) {
        let Some(s) = self.sampler(SampleKind::Sigma, None) else {
            return;
        };
        let b = &self.basis;
        self.sampled(res, &s, 9, &|x, _| {
            let u = self.image(x, b).map_err(|e| e.to_string())?;
            let back = isomap::phi_inverse(&u, b).map_err(|e| e.to_string())?;
            ensure(&back == x, "phi_inverse(phi(M)) != M")
        });
    }
}

fn mat_det_is_ell(v: &SigmaElem) -> bool {
    modgroup::mat2_det(&v.l).as_rational()
        == Some(&num_rational::BigRational::from_integer(v.ell.clone()))
}

fn ensure(ok: bool, msg: &str) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// `eps_0^k` for the first `count` exponents `k` making it totally positive.
pub fn totally_positive_powers(ctx: &FieldCtx, count: usize) -> Vec<QuadElem> {
    let eps = ctx.fundamental_unit();
    (1u32..)
        .map(|k| eps.pow(k))
        .filter(|e| e.is_totally_positive())
        .take(count)
        .collect()
}

fn shrink(
    ctx: &FieldCtx,
    sampler: &Sampler,
    mut word: Vec<Letter>,
    seed: u64,
    check: &Check<'_>,
    mut detail: String,
) -> (Vec<Letter>, String) {
    let eval = |w: &[Letter]| {
        w.iter().fold(SigmaElem::identity(ctx), |acc, l| {
            acc.mul(ctx, &sampler.letter_matrix(l))
        })
    };
    let mut i = 0;
    while i < word.len() {
        let mut shorter = word.clone();
        shorter.remove(i);
        match check(&eval(&shorter), seed) {
            Err(d) if !shorter.is_empty() => {
                word = shorter;
                detail = d;
            }
            _ => i += 1,
        }
    }
    (word, detail)
}

/// The named suites (all when empty) over all fields, sharded by `(m, suite)`
/// and merged in order.
pub fn run_all(m_list: &[u64], suites: &[&str], cfg: &Config) -> Result<Vec<SuiteResult>> {
    let suites: Vec<&str> = if suites.is_empty() {
        SUITES.to_vec()
    } else {
        suites.to_vec()
    };
    let runs: Vec<FieldRun> = m_list
        .iter()
        .map(|&m| FieldRun::new(m, cfg.clone()))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, &str)> = (0..runs.len())
        .flat_map(|i| suites.iter().map(move |s| (i, *s)))
        .collect();
    Ok(jobs.par_iter().map(|&(i, s)| runs[i].run(s)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(trials: usize) -> Config {
        Config {
            seed: 7,
            trials,
            fault: None,
        }
    }

    #[test]
    fn split_prime_for_five() {
        let ctx = FieldCtx::new(5).unwrap();
        assert_eq!(
            split_prime_ideal(&ctx),
            Some(IdealHNF::from_canonical(&ctx, 11, 1).unwrap())
        );
    }

    #[test]
    fn all_suites_pass_small() {
        for r in run_all(&[2, 5, 6], &[], &cfg(8)).unwrap() {
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn sign_fault_breaks_homomorphism() {
        let run = FieldRun::new(
            5,
            Config {
                fault: Some(Fault::Sign),
                ..cfg(8)
            },
        )
        .unwrap();
        let r = run.run("homomorphism");
        assert!(!r.ok());
        assert!(!r.counterexamples.is_empty());
        assert!(r.counterexamples[0].word.split(' ').count() <= 12);
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            run_all(&[3], &[], &cfg(4)).unwrap(),
            run_all(&[3], &[], &cfg(4)).unwrap()
        );
    }

    #[test]
    fn totally_positive_power_lists() {
        let k2 = FieldCtx::new(2).unwrap();
        let p = totally_positive_powers(&k2, 2);
        assert_eq!(p[0], k2.parse_elem("3+2*sqrt(2)").unwrap());
        let k3 = FieldCtx::new(3).unwrap();
        assert_eq!(
            totally_positive_powers(&k3, 1)[0],
            k3.parse_elem("2+sqrt(3)").unwrap()
        );
    }
}
