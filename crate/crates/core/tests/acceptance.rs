//! Acceptance suite: one test per criterion, each printing a pass line when
//! it completes. All comparisons are exact rational equality.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use flexion::bridge::{da, darit, ma, psi};
use flexion::derivations::{
    make_eps, make_h, recover_partner, theta3_membership, Derivation,
};
use flexion::mould::{
    check_boundary_identity, make_u, mould_ari, mould_arit, mould_mu, Kind, Mould,
};
use flexion::mpoly::LinForm;
use flexion::ncalg::{c_poly, Alphabet, LieElement, NcPoly, A};
use flexion::rat::Rat;
use flexion::relations::{
    combine, goncharov_span_check, h_basis, relation_kernel, relation_kernel_with_lift,
    verify_certificate,
};
use flexion::verify::{random_lie, run_suite, singular_bracket_family, DetRng, Suite};

fn eps(i: u64) -> Derivation {
    make_eps(i).unwrap()
}

fn pass(line: &str) {
    println!("acceptance: PASS {line}");
}

#[test]
fn criterion_01_generator_identities() {
    for i in 0..=8u64 {
        assert!(eps(2 * i).kills_ab(), "eps_{} on [a,b]", 2 * i);
    }
    let e2 = eps(2);
    let idx = [0u64, 4, 6, 8, 10, 12, 14, 16];
    let mut family: Vec<Derivation> = idx.iter().map(|&i| eps(i)).collect();
    for &i in &idx {
        for &j in &idx {
            if i < j && i + j <= 16 {
                family.push(eps(i).bracket(&eps(j)));
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                if j < k && i + j + k <= 16 {
                    family.push(eps(i).bracket(&eps(j).bracket(&eps(k))));
                }
            }
        }
    }
    for x in &family {
        assert!(e2.bracket(x).is_zero(), "eps_2 fails to commute");
    }
    pass("1: eps_{2i}([a,b]) = 0 and eps_2 centrality up to weight 16");
}

#[test]
fn criterion_02_depth2_weight14_relation() {
    let cert = relation_kernel(14, 2).unwrap();
    assert_eq!(cert.basis, vec![(2, 8), (4, 6)]);
    assert_eq!(cert.kernel.len(), 1, "exactly one kernel vector");
    assert_eq!(
        cert.kernel[0].coeffs,
        vec![Rat::one(), Rat::from_int(-3)],
        "kernel vector proportional to (1, -3)"
    );
    let basis = h_basis(14, 2).unwrap();
    let combo = combine(&basis, &cert.kernel[0].coeffs);
    assert!(combo.is_zero(), "h^2_{{2,8}} - 3 h^2_{{4,6}} vanishes on both generators");
    pass("2: weight-14 depth-2 kernel is (1, -3) and the relation is exact");
}

#[test]
fn criterion_03_depth3_weight16_relation_and_lift() {
    let cert = relation_kernel_with_lift(16, 3).unwrap();
    assert_eq!(cert.basis, vec![(2, 10), (4, 8), (6, 6)]);
    assert_eq!(cert.kernel.len(), 1, "exactly one kernel vector");
    let kv = &cert.kernel[0];
    assert_eq!(
        kv.coeffs,
        vec![Rat::from_int(4), Rat::from_int(-25), Rat::from_int(21)],
        "kernel vector proportional to (4, -25, 21)"
    );

    let basis = h_basis(16, 3).unwrap();
    let combo = combine(&basis, &kv.coeffs);
    let witness = kv.theta3_witness.as_ref().expect("theta-cubed witness");
    assert_eq!(witness.expand(), *combo.val_a(), "witness re-expands exactly");

    let lift = kv.lift.as_ref().expect("lift solution");
    assert!(
        lift.family.iter().all(|idx| idx.iter().all(|&i| i >= 4)),
        "lift family uses generator indices >= 4 only (r,s,t >= 1)"
    );
    let mut re = Derivation::zero();
    for (idx, c) in lift.family.iter().zip(&lift.coeffs) {
        let t = eps(idx[0]).bracket(&eps(idx[1]).bracket(&eps(idx[2])));
        re = re.add(&t.scale(c));
    }
    assert_eq!(re, combo, "lift re-expands to the relation combination");

    // the comparison against the coefficients printed in the literature is
    // recorded, not asserted
    assert_eq!(lift.candidates.len(), 2, "candidate comparisons recorded");
    for cand in &lift.candidates {
        println!(
            "acceptance: note: candidate {:?} matches = {}",
            cand.terms, cand.matches
        );
    }
    pass("3: weight-16 depth-3 kernel is (4, -25, 21) with witness and lift");
}

#[test]
fn criterion_04_empty_kernel_controls() {
    // independent oracle: classical dimension of level-1 cusp forms
    fn cusp_dim(k: u64) -> usize {
        if k < 12 || k % 2 == 1 {
            return 0;
        }
        let q = (k / 12) as usize;
        if k % 12 == 2 {
            q - 1
        } else {
            q
        }
    }
    // frozen sanity values for the oracle itself
    assert_eq!(cusp_dim(12), 1);
    assert_eq!(cusp_dim(14), 0);
    assert_eq!(cusp_dim(26), 1);

    let cert = relation_kernel(12, 2).unwrap();
    assert!(cert.kernel.is_empty(), "no weight-10 cusp forms");
    for n in [8u64, 10, 12, 14, 16] {
        let cert = relation_kernel(n, 2).unwrap();
        assert_eq!(
            cert.kernel.len(),
            cusp_dim(n - 2),
            "depth-2 kernel dimension at weight {n}"
        );
    }
    for n in [10u64, 12, 14, 16] {
        let cert = relation_kernel(n, 3).unwrap();
        assert_eq!(
            cert.kernel.len(),
            cusp_dim(n - 4),
            "depth-3 kernel dimension at weight {n}"
        );
    }
    pass("4: kernel dimensions match the cusp-form dimension oracle");
}

#[test]
fn criterion_05_psi_homomorphism() {
    for i in 0..=6u64 {
        for j in 0..=6u64 {
            let lhs = psi(&eps(2 * i).bracket(&eps(2 * j))).unwrap();
            let rhs = mould_ari(
                &make_u(2 * i as i64 - 2).unwrap(),
                &make_u(2 * j as i64 - 2).unwrap(),
            )
            .unwrap();
            assert!(
                lhs.eq_through(&rhs, 2),
                "psi([eps_{}, eps_{}]) != ari(U_{}, U_{})",
                2 * i,
                2 * j,
                2 * i as i64 - 2,
                2 * j as i64 - 2
            );
        }
    }
    let lhs = psi(&eps(4).bracket(&eps(4).bracket(&eps(6)))).unwrap();
    let rhs = mould_ari(
        &make_u(2).unwrap(),
        &mould_ari(&make_u(2).unwrap(), &make_u(4).unwrap()).unwrap(),
    )
    .unwrap();
    assert!(lhs.eq_through(&rhs, 3), "depth-3 psi instance");
    pass("5: psi([eps_2i, eps_2j]) = ari(U_{2i-2}, U_{2j-2}) for 0 <= i,j <= 6 plus depth 3");
}

#[test]
fn criterion_06_singular_closure_through_depth_4() {
    use rayon::prelude::*;
    let family = singular_bracket_family();
    assert!(family.len() > 250, "family covers depths 2..4");
    let failures: Vec<String> = family
        .par_iter()
        .filter_map(|(label, m)| {
            let ok = m
                .singularity_report()
                .map(|rep| rep.all_polynomial())
                .unwrap_or(false);
            (!ok).then(|| label.clone())
        })
        .collect();
    assert!(failures.is_empty(), "Delta_r fails to clear: {failures:?}");
    pass("6: Delta_r divides all bracket components of the generators through depth 4");
}

#[test]
fn criterion_07_ma_dictionary_on_random_samples() {
    let mut rng = DetRng::new(2024);
    let a = NcPoly::letter(Alphabet::Ab, A);

    // ma{P,Q} = ari(maP, maQ)
    let mut done = 0;
    while done < 50 {
        let (w1, d1) = (rng.int_in(2, 5) as usize, rng.int_in(1, 2) as usize);
        let (w2, d2) = (rng.int_in(2, 5) as usize, rng.int_in(1, (3 - d1) as i64) as usize);
        let p = random_lie(&mut rng, w1, d1);
        let q = random_lie(&mut rng, w2, d2);
        if p.poly().is_zero() || q.poly().is_zero() {
            continue;
        }
        let br = flexion::derivations::poisson(&p, &q);
        let lhs = ma(br.poly()).unwrap();
        let rhs = mould_ari(&ma(p.poly()).unwrap(), &ma(q.poly()).unwrap()).unwrap();
        assert!(lhs.eq_through(&rhs, d1 + d2), "poisson transport");
        done += 1;
    }

    // ma([a,Q]) = -(u_1+...+u_r) ma(Q)
    let mut done = 0;
    while done < 50 {
        let (w, d) = (rng.int_in(2, 7) as usize, rng.int_in(1, 3) as usize);
        let q = random_lie(&mut rng, w, d);
        if q.poly().is_zero() {
            continue;
        }
        let lhs = ma(&a.lie_bracket(q.poly())).unwrap();
        let rhs = ma(q.poly()).unwrap();
        let sum = LinForm::all_ones(d);
        assert_eq!(
            lhs.component(d),
            rhs.component(d).mul_form(&sum).scale(&-Rat::one()),
            "ad-a formula"
        );
        done += 1;
    }

    // push-invariance equivalence, both directions exercised
    let mut invariant = 0;
    let mut variant = 0;
    for d in [
        eps(4).bracket(&eps(6)),
        eps(0).bracket(&eps(8)),
        eps(4).bracket(&eps(0).bracket(&eps(6))),
    ] {
        let m = ma(d.val_a()).unwrap();
        assert!(d.val_a().is_push_invariant());
        assert!(m.push().unwrap().eq_through(&m, 4));
        invariant += 1;
    }
    let mut done = 0;
    while done < 50 {
        let (w, d) = (rng.int_in(2, 7) as usize, rng.int_in(1, 3) as usize);
        let p = random_lie(&mut rng, w, d);
        if p.poly().is_zero() {
            continue;
        }
        let m = ma(p.poly()).unwrap();
        let poly_inv = p.poly().is_push_invariant();
        let mould_inv = m.push().unwrap().eq_through(&m, d);
        assert_eq!(poly_inv, mould_inv, "push equivalence");
        if poly_inv {
            invariant += 1;
        } else {
            variant += 1;
        }
        done += 1;
    }
    assert!(invariant > 0 && variant > 0);
    pass("7: ma dictionary (poisson transport, ad-a factor, push equivalence) on 50+ samples");
}

#[test]
fn criterion_08_appendix_identities() {
    // eq (A.4): ari(swap A, swap B) = swap(ari(A, B)) on push-invariant inputs
    let u2 = make_u(2).unwrap();
    let u4 = make_u(4).unwrap();
    let um2 = make_u(-2).unwrap();
    let pairs: Vec<(Mould, Mould)> = vec![
        (u2.clone(), u4.clone()),
        (um2.clone(), u4.clone()),
        (u2.clone(), mould_ari(&u2, &u4).unwrap()),
        (um2.clone(), mould_ari(&um2, &u4).unwrap()),
        (mould_ari(&u2, &u4).unwrap(), um2.clone()),
    ];
    for (x, y) in &pairs {
        assert!(x.is_push_invariant().unwrap() && y.is_push_invariant().unwrap());
        let lhs = mould_ari(&x.swap(), &y.swap()).unwrap();
        let rhs = mould_ari(x, y).unwrap().swap();
        assert!(lhs.eq_through(&rhs, 4), "eq (A.4)");
    }

    // boundary identity on swaps of singular bialternals
    for x in [
        mould_ari(&um2, &u2).unwrap(),
        mould_ari(&um2, &mould_ari(&u2, &u4).unwrap()).unwrap(),
    ] {
        assert!(x.is_alternal());
        assert_eq!(check_boundary_identity(&x.swap()), Ok(true), "boundary identity");
    }

    // eq (B.7): arit(B) arit(A) - arit(A) arit(B) = arit(ari(A, B)) through depth 4
    let mut rng = DetRng::new(4096);
    for _ in 0..3 {
        let a = random_mould(&mut rng);
        let b = random_mould(&mut rng);
        let x = random_mould(&mut rng);
        let lhs = mould_arit(&b, &mould_arit(&a, &x).unwrap())
            .unwrap()
            .sub(&mould_arit(&a, &mould_arit(&b, &x).unwrap()).unwrap())
            .unwrap();
        let rhs = mould_arit(&mould_ari(&a, &b).unwrap(), &x).unwrap();
        assert!(lhs.eq_through(&rhs, 4), "eq (B.7)");
    }

    // Darit correspondence: -da(D_U(F)) = Darit_U . da(F), U in {C_3, C_5}
    for u_idx in [3u32, 5] {
        let u = c_poly(u_idx);
        let u_lie = LieElement::new(u.clone()).unwrap();
        let partner = recover_partner(&u_lie).unwrap();
        let d_u = Derivation::from_images(u.clone(), partner.poly().clone()).unwrap();
        let mut samples: Vec<NcPoly> = vec![
            c_poly(2),
            c_poly(4),
            c_poly(2).lie_bracket(&c_poly(3)),
            c_poly(2).lie_bracket(&c_poly(2).lie_bracket(&c_poly(3))),
        ];
        let mut rng = DetRng::new(777 + u_idx as u64);
        for _ in 0..3 {
            let (w, d) = (rng.int_in(3, 6) as usize, rng.int_in(1, 3) as usize);
            let f = random_lie(&mut rng, w, d);
            if !f.poly().is_zero() {
                samples.push(f.poly().clone());
            }
        }
        for f in &samples {
            let depth = f.homogeneous_depth().unwrap() + 1;
            let lhs = da(&d_u.apply(f)).unwrap().scale(&-Rat::one());
            let rhs = darit(&u, &da(f).unwrap()).unwrap();
            assert!(lhs.eq_through(&rhs, depth), "Darit correspondence for C_{u_idx}");
        }
    }
    pass("8: eq (A.4), boundary identity, eq (B.7), and the Darit correspondence");
}

fn random_mould(rng: &mut DetRng) -> Mould {
    use flexion::mpoly::{Exps, MPoly, RatComponent};
    let mut comps = Vec::new();
    for r in 1..=4usize {
        let mut p = MPoly::zero(r);
        for _ in 0..3 {
            let exps: Vec<u32> = (0..r).map(|_| rng.int_in(0, 2) as u32).collect();
            p.add_term(Exps(exps), Rat::from_int(rng.int_in(-3, 3)));
        }
        if !p.is_zero() {
            comps.push((r, RatComponent::from_poly(p)));
        }
    }
    Mould::from_components(Kind::U, comps, Some(4))
}

#[test]
fn criterion_09_goncharov_spanning() {
    for n in [6u64, 8, 10, 12, 14, 16] {
        let row = goncharov_span_check(n).unwrap();
        assert_eq!(
            row.dim_bialternal, row.dim_generated,
            "dimension mismatch at weight {n}"
        );
    }
    pass("9: depth-3 bialternal dimension equals the generated rank for weights 6..16");
}

#[test]
fn criterion_10_property_suites() {
    // named suites (the mould suite's singular closure is criterion 6's own
    // test, so its remaining properties are exercised directly below)
    for suite in [Suite::Core, Suite::Main, Suite::AppendixA, Suite::AppendixB] {
        let r = run_suite(suite);
        for c in &r.checks {
            assert!(c.pass, "{} failed: {:?}", c.id, c.detail);
        }
    }

    // mould-layer property checks
    let mut rng = DetRng::new(99);
    let a = random_mould(&mut rng);
    let b = random_mould(&mut rng);
    let c = random_mould(&mut rng);
    // ari is a Lie bracket through depth 4
    let jac = mould_ari(&mould_ari(&a, &b).unwrap(), &c)
        .unwrap()
        .add(&mould_ari(&mould_ari(&b, &c).unwrap(), &a).unwrap())
        .unwrap()
        .add(&mould_ari(&mould_ari(&c, &a).unwrap(), &b).unwrap())
        .unwrap();
    assert!(jac.eq_through(&Mould::zero(Kind::U), 4), "ari Jacobi");

    // alternality preservation and the reversal sign law
    let alternal_inputs = [
        make_u(-2).unwrap(),
        make_u(4).unwrap(),
        ma(random_lie(&mut rng, 5, 2).poly()).unwrap(),
    ];
    for x in &alternal_inputs {
        assert!(x.is_alternal());
        for y in &alternal_inputs {
            assert!(mould_ari(x, y).unwrap().is_alternal(), "alternality preserved");
        }
    }
    let m = mould_ari(&make_u(2).unwrap(), &mould_ari(&make_u(2).unwrap(), &make_u(4).unwrap()).unwrap()).unwrap();
    for r in 1..=3usize {
        let comp = m.component(r);
        let images: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut im = vec![0i64; r];
                im[r - 1 - i] = 1;
                im
            })
            .collect();
        let reversed = comp.substitute_linear(&images, r).unwrap();
        let sign = if (r - 1) % 2 == 0 { Rat::one() } else { -Rat::one() };
        assert_eq!(comp, reversed.scale(&sign), "reversal law at depth {r}");
    }

    // mu agrees with the word product, and ma round-trips
    let f = random_lie(&mut rng, 4, 2);
    let g = random_lie(&mut rng, 3, 1);
    let lhs = mould_mu(&ma(f.poly()).unwrap(), &ma(g.poly()).unwrap()).unwrap();
    let rhs = ma(&f.poly().nc_mul(g.poly())).unwrap();
    assert!(lhs.eq_through(&rhs, 3), "mu versus word product");
    let back = flexion::bridge::ma_inverse(&ma(f.poly()).unwrap()).unwrap();
    assert_eq!(back.poly(), f.poly(), "ma round trip");

    // certificates re-verify from scratch
    assert!(verify_certificate(&relation_kernel_with_lift(16, 3).unwrap()).unwrap());
    assert!(verify_certificate(&relation_kernel(14, 2).unwrap()).unwrap());

    // the h-swap parity symmetry is a computed fact
    let h26 = make_h(2, 6, 2).unwrap().derivation;
    let h62 = make_h(6, 2, 2).unwrap().derivation;
    assert_eq!(h62, h26.scale(&-Rat::one()));

    // theta-cubed membership of the weight-16 relation value
    let basis = h_basis(16, 3).unwrap();
    let combo = combine(
        &basis,
        &[Rat::from_int(4), Rat::from_int(-25), Rat::from_int(21)],
    );
    assert!(theta3_membership(combo.val_a()).is_ok());
    assert!(combo.is_highest_weight());

    pass("10: module property suites and cross-checks");
}
