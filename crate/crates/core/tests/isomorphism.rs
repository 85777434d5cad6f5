use hilbert_ortho::action;
use hilbert_ortho::ideals::IdealHNF;
use hilbert_ortho::isomap::{self, BasisCtx};
use hilbert_ortho::modgroup::{self, GammaICtx, SampleKind, Sampler, SigmaElem};
use hilbert_ortho::ortho4;
use hilbert_ortho::verify::{self, Config, Fault, FieldRun};
use hilbert_ortho::{Error, FieldCtx};

fn field(m: u64) -> FieldCtx {
    FieldCtx::new(m).unwrap()
}

#[test]
fn fast_path_matches_oracle_on_several_bases() {
    for m in [2u64, 3, 5, 13, 21] {
        let ctx = field(m);
        let bases = [
            BasisCtx::standard(&ctx),
            BasisCtx::new(&ctx, ctx.omega.clone(), ctx.one()).unwrap(),
            BasisCtx::new(&ctx, ctx.int(3), &ctx.omega + &ctx.int(1)).unwrap(),
        ];
        let s = Sampler::new(&ctx, SampleKind::Sigma, None).unwrap();
        for seed in 0..20 {
            let x = s.sample(seed).elem;
            for b in &bases {
                assert_eq!(
                    isomap::phi_fast(&x, b).unwrap(),
                    isomap::base_change_oracle(&x, b).unwrap()
                );
            }
        }
    }
}

#[test]
fn gamma_maps_into_discriminant_kernel_and_back() {
    let ctx = field(10);
    let b = BasisCtx::standard(&ctx);
    let s = Sampler::new(&ctx, SampleKind::Gamma, None).unwrap();
    for seed in 100..130 {
        let x = s.sample(seed).elem;
        let u = isomap::phi_fast(&x, &b).unwrap();
        assert!(b.s1.in_discriminant_kernel(&u));
        assert_eq!(isomap::phi_inverse(&u, &b).unwrap(), x);
    }
}

#[test]
fn atkin_lehner_images_split_by_class() {
    let ctx = field(15);
    let b = BasisCtx::standard(&ctx);
    for ell in [1u64, 3, 5, 15] {
        let u = isomap::phi_fast(&modgroup::atkin_lehner(&ctx, ell).unwrap(), &b).unwrap();
        assert!(b.s1.in_so0_z(&u));
        assert_eq!(
            b.s1.in_discriminant_kernel(&u),
            ell == 1 || ell == 15,
            "ell = {ell}"
        );
    }
}

#[test]
fn ideal_images_for_split_prime() {
    let ctx = field(5);
    let ideal = IdealHNF::from_canonical(&ctx, 11, 1).unwrap();
    let ictx = GammaICtx::new(&ctx, ideal.clone()).unwrap();
    let b = BasisCtx::for_ideal(&ctx, &ideal).unwrap();
    let s = Sampler::new(&ctx, SampleKind::GammaI, Some(&ictx)).unwrap();
    for seed in 0..25 {
        let x = s.sample(seed).elem;
        assert!(modgroup::in_gamma_i(&ctx, &x, &ictx));
        assert!(b.t1.in_discriminant_kernel(&isomap::psi(&x, &b).unwrap()));
    }
}

#[test]
fn actions_agree_end_to_end() {
    let ctx = field(6);
    let b = BasisCtx::standard(&ctx);
    let s = Sampler::new(&ctx, SampleKind::GammaStar, None).unwrap();
    for seed in 0..15 {
        let x = s.sample(seed).elem;
        let z = action::sample_point(&b, seed);
        assert!(action::check_compat(&x, &b, &z).unwrap());
    }
}

#[test]
fn corrupted_image_breaks_compatibility() {
    let ctx = field(3);
    let b = BasisCtx::standard(&ctx);
    let x = SigmaElem::from_sl2(&ctx, [[ctx.one(), ctx.one()], [ctx.zero(), ctx.one()]]).unwrap();
    let z = action::sample_point(&b, 1);
    let mut u = isomap::phi_fast(&x, &b).unwrap();
    // the top row does not enter the action, so perturb the b column
    u[1][0] += hilbert_ortho::arith::rat(1);
    assert!(!action::check_compat_matrix(&x, &u, &b, &z));
}

#[test]
fn non_image_matrix_is_reported() {
    let ctx = field(5);
    let b = BasisCtx::standard(&ctx);
    let d = ortho4::diag([1, 1, 1, 2].map(hilbert_ortho::arith::rat));
    assert!(matches!(
        isomap::phi_inverse(&d, &b),
        Err(Error::NotInImage(_)) | Err(Error::NotOrthogonal)
    ));
}

#[test]
fn suites_pass_on_larger_discriminants() {
    for r in verify::run_all(
        &[17, 33],
        &[],
        &Config {
            seed: 3,
            trials: 6,
            fault: None,
        },
    )
    .unwrap()
    {
        assert!(r.ok(), "{r:?}");
    }
}

#[test]
fn fault_is_localized_to_sign_sensitive_suites() {
    let run = FieldRun::new(
        2,
        Config {
            seed: 1,
            trials: 6,
            fault: Some(Fault::Sign),
        },
    )
    .unwrap();
    assert!(!run.run("homomorphism").ok());
    assert!(run.run("cosets").ok());
}
