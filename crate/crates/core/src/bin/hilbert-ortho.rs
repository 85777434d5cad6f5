use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use hilbert_ortho::arith::{self, fmt_rat};
use hilbert_ortho::ideals::IdealHNF;
use hilbert_ortho::isomap::{self, BasisCtx, BasisRole};
use hilbert_ortho::modgroup::{self, GammaICtx, M0Source, NormalizerClass};
use hilbert_ortho::ortho4::{self, Mat4};
use hilbert_ortho::quadfield::parse_rational;
use hilbert_ortho::verify::{self, Config, Fault};
use hilbert_ortho::{Error, FieldCtx};

#[derive(Parser)]
#[command(
    name = "hilbert-ortho",
    version,
    about = "Hilbert modular groups over Q(sqrt m) as orthogonal groups of signature (2,2)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Field invariants, Atkin-Lehner cosets and the normalizer class.
    Analyze {
        m: u64,
        /// Primitive ideal given as "N,t" for the basis (N, t+w).
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Image of a matrix under the isomorphism, or a preimage with --inverse.
    Map {
        m: u64,
        /// "u,v" such as "1,w", "w,1", or "ideal:N,t".
        basis: String,
        /// "[[a,b],[c,d]]/sqrt(l)", "I", "V<l>", or a 4x4 rational matrix with --inverse.
        matrix: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Randomized exact property suites.
    Verify {
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "2,3,5,6,7,10,13,15,17,21,33"
        )]
        m_list: Vec<u64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Restrict to these suites.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<String>,
        /// Omit the timestamp so that output is byte-identical across runs.
        #[arg(long)]
        reproducible: bool,
        #[arg(long, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Atkin-Lehner coset classes of the Hurwitz-Maass extension.
    Cosets {
        m: u64,
        #[arg(long)]
        ideal: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    Sign,
}

enum Failure {
    Input(String),
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Analyze { m, ideal } => analyze(m, ideal.as_deref()),
        Cmd::Map {
            m,
            basis,
            matrix,
            inverse,
        } => map(m, &basis, &matrix, inverse),
        Cmd::Verify {
            m_list,
            seed,
            trials,
            suites,
            reproducible,
            inject_fault,
        } => {
            let fault = inject_fault.map(|FaultArg::Sign| Fault::Sign);
            run_verify(
                &m_list,
                Config {
                    seed,
                    trials,
                    fault,
                },
                &suites,
                reproducible,
            )
        }
        Cmd::Cosets { m, ideal } => cosets(m, ideal.as_deref()),
    };
    match out {
        Ok(v) => emit(&v, ExitCode::SUCCESS),
        Err(Failure::Check(v)) => emit(&v, ExitCode::from(1)),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(v: &Value, code: ExitCode) -> ExitCode {
    let text = serde_json::to_string_pretty(v).expect("json");
    let mut out = std::io::stdout().lock();
    // a closed pipe is not an error of ours
    let _ = writeln!(out, "{text}");
    code
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn mat4_json(a: &Mat4) -> Value {
    json!(ortho4::to_strings(a))
}

fn parse_ideal(ctx: &FieldCtx, spec: &str) -> Result<IdealHNF, Failure> {
    let bad = || Failure::Input(format!("ideal must be \"N,t\", got '{spec}'"));
    let (n, t) = spec.split_once(',').ok_or_else(bad)?;
    let n: u64 = n.trim().parse().map_err(|_| bad())?;
    let t: i64 = t.trim().parse().map_err(|_| bad())?;
    Ok(IdealHNF::from_canonical(ctx, n, t)?)
}

fn parse_basis(ctx: &FieldCtx, spec: &str) -> Result<BasisCtx, Failure> {
    if let Some(rest) = spec.strip_prefix("ideal:") {
        return Ok(BasisCtx::for_ideal(ctx, &parse_ideal(ctx, rest)?)?);
    }
    let (u, v) = spec
        .split_once(',')
        .ok_or_else(|| Failure::Input(format!("basis must be \"u,v\", got '{spec}'")))?;
    Ok(BasisCtx::new(ctx, ctx.parse_elem(u)?, ctx.parse_elem(v)?)?)
}

fn parse_mat4(text: &str) -> Result<Mat4, Failure> {
    let bad = || Failure::Input(format!("expected a 4x4 rational matrix, got '{text}'"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("[[")
        .and_then(|r| r.strip_suffix("]]"))
        .ok_or_else(bad)?;
    let rows: Vec<Vec<BigRational>> = inner
        .split("],[")
        .map(|r| r.split(',').map(parse_rational).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(bad());
    }
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| rows[i][j].clone())
    }))
}

fn gram_json(g: &ortho4::GramForm) -> Value {
    json!(g
        .s
        .iter()
        .map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn analyze(m: u64, ideal: Option<&str>) -> Outcome {
    let ctx = FieldCtx::new(m)?;
    let mut ok = true;
    let eps = ctx.fundamental_unit();
    let nu = arith::prime_divisors(ctx.disc).len();
    let index = modgroup::index_formula(&ctx);
    let classes = modgroup::coset_classes(&ctx)?;
    ok &= classes.len() == index;

    let mut al = Vec::new();
    for ell in arith::squarefree_divisors(ctx.disc) {
        let v = modgroup::atkin_lehner(&ctx, ell)?;
        let member = modgroup::in_gamma_star(&ctx, &v);
        ok &= member;
        let class = classes
            .iter()
            .find(|c| c.contains(&ell))
            .cloned()
            .unwrap_or_default();
        al.push(json!({
            "ell": s(ell),
            "matrix": s(&v),
            "in_gamma_star": member,
            "in_gamma": modgroup::in_gamma(&v),
            "coset": class.iter().map(s).collect::<Vec<_>>(),
        }));
    }

    let normalizer = match modgroup::normalizer_class(&ctx)? {
        NormalizerClass::Equal => json!({ "kind": "equal" }),
        NormalizerClass::Extended { m0, source } => {
            let inn = m0.in_normalizer(&ctx);
            let ings = m0.in_gamma_star(&ctx);
            ok &= inn && !ings;
            let source = match source {
                M0Source::Unit => "unit",
                M0Source::TwoSquares => "two_squares",
            };
            json!({
                "kind": "extended",
                "m0": s(&m0),
                "source": source,
                "in_normalizer": inn,
                "in_gamma_star": ings,
            })
        }
    };

    let mut report = json!({
        "schema": 1,
        "command": "analyze",
        "m": s(m),
        "d_K": s(ctx.disc),
        "omega": s(&ctx.omega),
        "fundamental_unit": { "value": s(&eps), "norm": s(fmt_rat(&eps.norm())) },
        "nu": s(nu),
        "index_gamma_star": s(index),
        "coset_count": s(classes.len()),
        "atkin_lehner": al,
        "normalizer_class": normalizer,
        "khat_primes": modgroup::khat_primes(&ctx).iter().map(s).collect::<Vec<_>>(),
    });

    if let Some(spec) = ideal {
        let (section, ideal_ok) = ideal_report(&ctx, spec)?;
        ok &= ideal_ok;
        report["ideal"] = section;
    }
    report["checks_passed"] = json!(ok);
    if ok {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn ideal_report(ctx: &FieldCtx, spec: &str) -> Result<(Value, bool), Failure> {
    let ideal = parse_ideal(ctx, spec)?;
    let ictx = GammaICtx::new(ctx, ideal.clone())?;
    let b = BasisCtx::for_ideal(ctx, &ideal)?;
    let mut ok = true;
    let mut al = Vec::new();
    for ell in arith::squarefree_divisors(ctx.disc) {
        let v = modgroup::atkin_lehner_ideal(ctx, &ictx, ell)?;
        let member = modgroup::in_gamma_star_i(ctx, &v, &ictx);
        let image = isomap::psi(&v, &b)?;
        let in_so0_z = b.t1.in_so0_z(&image);
        ok &= member && in_so0_z;
        al.push(json!({
            "ell": s(ell),
            "matrix": s(&v),
            "in_gamma_star_i": member,
            "in_gamma_i": modgroup::in_gamma_i(ctx, &v, &ictx),
            "psi_in_SO0_Z": in_so0_z,
            "psi_in_DK": b.t1.in_discriminant_kernel(&image),
        }));
    }
    let section = json!({
        "hnf": s(&ideal),
        "norm": s(ideal.norm()),
        "basis": [s(&b.u), s(&b.v)],
        "gram_T": gram_json(&b.t1),
        "atkin_lehner": al,
    });
    Ok((section, ok))
}

fn map(m: u64, basis: &str, matrix: &str, inverse: bool) -> Outcome {
    let ctx = FieldCtx::new(m)?;
    let b = parse_basis(&ctx, basis)?;
    let mut out = json!({
        "schema": 1,
        "command": "map",
        "m": s(m),
        "basis": [s(&b.u), s(&b.v)],
        "gram_S": gram_json(&b.s1),
    });
    if inverse {
        let u = parse_mat4(matrix)?;
        out["input"] = mat4_json(&u);
        match isomap::phi_inverse(&u, &b) {
            Ok(pre) => {
                out["preimage"] = s(&pre);
                out["not_in_image"] = Value::Null;
            }
            Err(Error::NotInImage(why)) => {
                out["preimage"] = Value::Null;
                out["not_in_image"] = s(why);
            }
            Err(e) => return Err(e.into()),
        }
        return Ok(out);
    }
    let x = modgroup::parse_sigma(&ctx, matrix)?;
    let u = isomap::phi_fast(&x, &b)?;
    out["input"] = s(&x);
    out["image"] = mat4_json(&u);
    out["orthogonal"] = json!(b.s1.is_orthogonal(&u));
    out["in_SO0"] = json!(b.s1.in_so0(&u)?);
    out["in_DK"] = json!(b.s1.in_discriminant_kernel(&u));
    if let BasisRole::Ideal { .. } = b.role {
        let p = isomap::psi(&x, &b)?;
        out["gram_T"] = gram_json(&b.t1);
        out["psi"] = mat4_json(&p);
        out["psi_in_SO0_Z"] = json!(b.t1.in_so0_z(&p));
        out["psi_in_DK"] = json!(b.t1.in_discriminant_kernel(&p));
    }
    Ok(out)
}

fn run_verify(m_list: &[u64], cfg: Config, suites: &[String], reproducible: bool) -> Outcome {
    for name in suites {
        if !verify::SUITES.contains(&name.as_str()) {
            return Err(Failure::Input(format!("unknown suite '{name}'")));
        }
    }
    let names: Vec<&str> = suites.iter().map(String::as_str).collect();
    let results = verify::run_all(m_list, &names, &cfg)?;
    let passed: usize = results.iter().map(|r| r.passed).sum();
    let failed: usize = results.iter().map(|r| r.failed).sum();
    let mut out = json!({
        "schema": 1,
        "command": "verify",
        "seed": s(cfg.seed),
        "trials": s(cfg.trials),
        "m_list": m_list.iter().map(s).collect::<Vec<_>>(),
        "suites": results,
        "total_passed": s(passed),
        "total_failed": s(failed),
        "all_passed": failed == 0,
    });
    if !reproducible {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        out["timestamp"] = s(now);
    }
    if failed == 0 {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn cosets(m: u64, ideal: Option<&str>) -> Outcome {
    let ctx = FieldCtx::new(m)?;
    let classes = modgroup::coset_classes(&ctx)?;
    let index = modgroup::index_formula(&ctx);
    let class_json = |cs: &[Vec<u64>]| {
        json!(cs
            .iter()
            .map(|c| c.iter().map(s).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    };
    let mut out = json!({
        "schema": 1,
        "command": "cosets",
        "m": s(m),
        "d_K": s(ctx.disc),
        "index_formula": s(index),
        "coset_count": s(classes.len()),
        "classes": class_json(&classes),
    });
    let mut ok = classes.len() == index;
    if let Some(spec) = ideal {
        let ictx = GammaICtx::new(&ctx, parse_ideal(&ctx, spec)?)?;
        let mut reps: Vec<(modgroup::SigmaElem, Vec<u64>)> = Vec::new();
        for ell in arith::squarefree_divisors(ctx.disc) {
            let v = modgroup::atkin_lehner_ideal(&ctx, &ictx, ell)?;
            match reps
                .iter_mut()
                .find(|(r, _)| modgroup::coset_eq_i(&ctx, &ictx, r, &v))
            {
                Some((_, c)) => c.push(ell),
                None => reps.push((v, vec![ell])),
            }
        }
        let ic: Vec<Vec<u64>> = reps.into_iter().map(|(_, c)| c).collect();
        ok &= ic.len() == index;
        out["ideal"] = json!({ "hnf": s(&ictx.ideal), "coset_count": s(ic.len()), "classes": class_json(&ic) });
    }
    out["checks_passed"] = json!(ok);
    if ok {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}
