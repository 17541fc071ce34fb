//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{
    random_exact_complex, random_invertible, relative_error, to_real, unimodular, RandomChoice,
};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;
use weil_euler::abelian::FgAbGroup;
use weil_euler::exact_determinant::{
    check_exact, determinant_exact, determinant_exact_with, euler_characteristic, ratio,
    GradedGroupComplex, DEFAULT_TOL,
};
use weil_euler::group_cohomology::{
    group_cohomology_q, group_cohomology_q_inhomogeneous, FiniteGroup, GModuleAction,
};
use weil_euler::number_field::{
    count_cycles_union_find, count_definite_by_b_sweep, enumerate_reduced_forms, field_invariants,
    Discriminant, Field, KroneckerCharacter,
};
use weil_euler::weil_cohomology::{
    compact_support_profile, psi_complex, verify_field, Verdict, VerificationReport,
};
use weil_euler::zeta::l_prime_at_zero;

const BOUND: u64 = 300;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_reports() -> Result<(Vec<VerificationReport>, f64), String> {
    let start = Instant::now();
    let reports = Field::corpus(BOUND)
        .into_iter()
        .map(|f| verify_field(f, 1e-9).map_err(|e| format!("{f}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((reports, start.elapsed().as_secs_f64()))
}

fn corpus_agreement() -> Outcome {
    let (reports, seconds) = corpus_reports()?;
    let mut worst = 0.0f64;
    for r in &reports {
        let err = (r.chi.abs() / r.zeta_star.leading.abs() - 1.0).abs();
        worst = worst.max(err);
        ensure(err <= 1e-9, || {
            format!("{}: relative error {err:e}", r.field())
        })?;
        ensure(r.verdict == Verdict::Pass, || {
            format!("{}: verdict fail", r.field())
        })?;
    }
    ensure(seconds < 30.0, || format!("took {seconds:.1} s"))?;
    Ok(format!(
        "{} fields, max relative error {worst:.2e}, {seconds:.2} s single-threaded",
        reports.len()
    ))
}

fn exact_rational_subcase() -> Outcome {
    let mut checked = 0;
    for f in Field::corpus(BOUND) {
        if f.character_discriminant() > 1 {
            continue;
        }
        let r = verify_field(f, 1e-9).map_err(|e| e.to_string())?;
        let chi = r.chi_exact.clone().ok_or(format!("{f}: chi not exact"))?;
        let zeta = r
            .zeta_star
            .exact
            .clone()
            .ok_or(format!("{f}: zeta* not exact"))?;
        ensure(chi == -zeta.clone(), || format!("{f}: {chi} vs -({zeta})"))?;
        checked += 1;
    }
    let spots = [
        ("Q", ratio(1, 2)),
        ("-3", ratio(1, 6)),
        ("-4", ratio(1, 4)),
        ("-23", ratio(3, 2)),
    ];
    for (name, expected) in &spots {
        let f: Field = name.parse().unwrap();
        let chi = verify_field(f, 1e-9).unwrap().chi_exact.unwrap();
        ensure(&chi == expected, || {
            format!("{name}: chi = {chi}, expected {expected}")
        })?;
    }
    Ok(format!(
        "{checked} fields equal exactly; spot values 1/2, 1/6, 1/4, 3/2"
    ))
}

fn internal_identity() -> Outcome {
    let (reports, _) = corpus_reports()?;
    let mut worst = 0.0f64;
    for r in &reports {
        let inv = &r.invariants;
        let hrw = inv.h as f64 * inv.regulator / inv.w as f64;
        let err = relative_error(r.chi.abs(), hrw);
        worst = worst.max(err);
        ensure(err <= 1e-12, || {
            format!("{}: |chi| = {} vs hR/w = {hrw}", r.field(), r.chi)
        })?;
    }
    Ok(format!(
        "{} fields, max relative error {worst:.2e}, convention {}",
        reports.len(),
        reports[0].convention.label()
    ))
}

fn class_number_oracle() -> Outcome {
    let mut fields = 0;
    for f in Field::corpus(BOUND).into_iter().skip(1) {
        let d = f.character_discriminant();
        let inv = field_invariants(f);
        let recount = if d < 0 {
            count_definite_by_b_sweep(d)
        } else {
            let narrow = count_cycles_union_find(d);
            if inv.unit_norm() == Some(1) {
                narrow / 2
            } else {
                narrow
            }
        };
        ensure(inv.h == recount, || {
            format!("d = {d}: {} vs recount {recount}", inv.h)
        })?;
        fields += 1;
    }
    for (d, h) in [(-23, 3), (-47, 5)] {
        let found = enumerate_reduced_forms(Discriminant::new(d).unwrap());
        ensure(found == h, || format!("d = {d}: h = {found}, expected {h}"))?;
    }
    Ok(format!(
        "{fields} quadratic fields agree; h(-23) = 3, h(-47) = 5"
    ))
}

fn regulator_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for d in [5, 8, 12, 13] {
        let lp = l_prime_at_zero(&KroneckerCharacter::new(d)).map_err(|e| e.to_string())?;
        let inv = field_invariants(Field::quadratic(d).unwrap());
        let hr = inv.h as f64 * inv.regulator;
        let err = (lp - hr).abs();
        worst = worst.max(err);
        ensure(err <= 1e-10, || format!("d = {d}: L'(0) = {lp}, hR = {hr}"))?;
    }
    Ok(format!("d = 5, 8, 12, 13, max absolute error {worst:.2e}"))
}

fn determinant_properties() -> Outcome {
    let shapes: [&[usize]; 8] = [
        &[1],
        &[2, 1],
        &[1, 2, 1],
        &[2, 2, 2, 1],
        &[1, 1, 1, 1, 1],
        &[3, 1, 2],
        &[2, 3, 1, 2],
        &[1, 0, 2, 1],
    ];
    let mut rng = StdRng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for shape in shapes {
        let c = random_exact_complex(shape, &mut rng);
        let reference = determinant_exact(&c).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let d = determinant_exact_with(&c, &mut RandomChoice { rng: &mut rng })
                .map_err(|e| e.to_string())?;
            let err = relative_error(d, reference);
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("{shape:?}: {d} vs {reference}"))?;
        }
        for k in 0..c.dims().len() {
            let m = random_invertible(c.dims()[k], &mut rng);
            let det_m = if m.nrows() == 0 {
                1.0
            } else {
                m.clone().lu().determinant()
            };
            let expected = reference * if k % 2 == 0 { det_m } else { 1.0 / det_m };
            let found = determinant_exact(&c.change_basis(k, &m).unwrap()).unwrap();
            ensure(relative_error(found, expected) <= 1e-9, || {
                format!("{shape:?}, basis {k}: {found} vs {expected}")
            })?;
        }
        let groups: Vec<FgAbGroup> = c
            .dims()
            .iter()
            .enumerate()
            .map(|(i, &n)| FgAbGroup::free(n).direct_sum(&FgAbGroup::cyclic(i as u64 + 2)))
            .collect();
        let chi = euler_characteristic(
            &GradedGroupComplex::new(groups.clone(), c.maps().to_vec()).unwrap(),
        )
        .unwrap();
        let mut moved = c.clone();
        for k in 0..c.dims().len() {
            let (p, _) = unimodular(c.dims()[k], 10, &mut rng);
            moved = moved.change_basis(k, &to_real(&p)).unwrap();
        }
        let chi_moved =
            euler_characteristic(&GradedGroupComplex::new(groups, moved.maps().to_vec()).unwrap())
                .unwrap();
        ensure(relative_error(chi_moved.abs(), chi.abs()) <= 1e-9, || {
            format!("{shape:?}: unimodular change moved |chi| from {chi} to {chi_moved}")
        })?;
    }
    Ok(format!(
        "{} complexes x 100 internal choices (max relative spread {worst:.2e}), base-change covariance, unimodular sign-only",
        shapes.len()
    ))
}

fn cyclic_group_cohomology() -> Outcome {
    for n in [2usize, 3, 4] {
        let g = FiniteGroup::cyclic(n);
        let z = GModuleAction::trivial(&g, 1);
        let expected = [
            FgAbGroup::free(1),
            FgAbGroup::trivial(),
            FgAbGroup::cyclic(n as u64),
            FgAbGroup::trivial(),
        ];
        for (q, e) in expected.iter().enumerate() {
            let h = group_cohomology_q(&g, &z, q).map_err(|e| e.to_string())?;
            let i = group_cohomology_q_inhomogeneous(&g, &z, q).map_err(|e| e.to_string())?;
            ensure(&h == e && &i == e, || {
                format!("Z/{n}, q = {q}: {h} and {i}, expected {e}")
            })?;
        }
    }
    Ok("H^q(Z/n, Z) = (Z, 0, Z/n, 0) for n = 2, 3, 4 in both models".into())
}

fn structural_invariants() -> Outcome {
    let mut fields = 0;
    for f in Field::corpus(BOUND) {
        let inv = field_invariants(f);
        let profile = compact_support_profile(&inv);
        let psi = psi_complex(&inv);
        ensure(check_exact(psi.realified(), DEFAULT_TOL), || {
            format!("{f}: psi not exact")
        })?;
        let ranks: Vec<usize> = profile.iter().map(FgAbGroup::free_rank).collect();
        ensure(psi.realified().dims() == &ranks[..], || {
            format!(
                "{f}: dims {:?} vs free ranks {ranks:?}",
                psi.realified().dims()
            )
        })?;
        ensure(profile[0].is_trivial(), || {
            format!("{f}: H^0_c = {}", profile[0])
        })?;
        ensure(profile[3] == FgAbGroup::cyclic(inv.w), || {
            format!("{f}: H^3_c = {}", profile[3])
        })?;
        ensure(profile[2].torsion_order() == BigInt::from(inv.h), || {
            format!("{f}: H^2_c torsion")
        })?;
        fields += 1;
    }
    Ok(format!(
        "{fields} fields: psi exact, dims = free ranks, H^0_c = 0, H^3_c = Z/w"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 corpus |chi| = |zeta*(0)| to 1e-9", corpus_agreement),
        ("2 exact rational subcase", exact_rational_subcase),
        ("3 chi = hR/w to 1e-12", internal_identity),
        ("4 class number recount", class_number_oracle),
        ("5 L'(0) = hR to 1e-10", regulator_oracle),
        ("6 determinant properties", determinant_properties),
        ("7 cyclic group cohomology", cyclic_group_cohomology),
        ("8 structural invariants", structural_invariants),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
