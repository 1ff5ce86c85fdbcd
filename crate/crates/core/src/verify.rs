//! Named verification suites runnable from the CLI.
//!
//! Suites bundle the identity checks by topic: `core` covers the generator
//! and Lie-polynomial identities, `mould` the dictionary and flexion
//! properties, `main` the relation/lift pipeline, `appendix-a` the
//! swap-equivariance and boundary identities, `appendix-b` the operator
//! identity and the `Darit` correspondence. `all` runs everything. Output
//! ordering is fixed by check id; every check is deterministic (randomized
//! checks use a fixed-seed generator).

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bridge::{da, da_delta, darit, is_ls, ma, ma_inverse, psi};
use crate::derivations::{
    factor_ad_a, make_eps, make_h, make_phi0, poisson, recover_partner, theta3_membership,
    Derivation,
};
use crate::linalg::RatMatrix;
use crate::lyndon::{lyndon_lie_basis, lyndon_words, witt_dimension};
use crate::mould::{
    check_boundary_identity, delta_u_factors, make_u, mould_ari, mould_arit, mould_mu,
    Kind, Mould,
};
use crate::mpoly::{Exps, LinForm, MPoly, RatComponent};
use crate::ncalg::{c_poly, Alphabet, LieElement, NcPoly, Word, B};
use crate::rat::Rat;
use crate::relations::{
    bialternal_space, combine, goncharov_span_check, h_basis, in_u_span, relation_kernel,
    relation_kernel_with_lift, verify_certificate,
};

/// A deterministic splitmix64 generator so that "random" checks are
/// reproducible bit for bit.
pub struct DetRng(u64);

impl DetRng {
    pub fn new(seed: u64) -> Self {
        DetRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// A random rational combination of the Lyndon basis at `(weight, depth)`,
/// with small integer coefficients (not identically zero when the component
/// is nonzero).
pub fn random_lie(rng: &mut DetRng, weight: usize, depth: usize) -> LieElement {
    let basis = lyndon_lie_basis(weight, Some(depth));
    let mut p = NcPoly::zero(Alphabet::Ab);
    loop {
        for e in &basis {
            let c = rng.int_in(-3, 3);
            if c != 0 {
                p = p.add(&e.poly().scale(&Rat::from_int(c)));
            }
        }
        if !p.is_zero() || basis.is_empty() {
            break;
        }
    }
    LieElement::trusted(p)
}

/// A polynomial mould with random small components, truncated at
/// `max_depth`.
fn random_poly_mould(rng: &mut DetRng, max_depth: usize, max_deg: u32) -> Mould {
    let mut comps = Vec::new();
    for r in 1..=max_depth {
        let mut p = MPoly::zero(r);
        for _ in 0..3 {
            let exps: Vec<u32> = (0..r).map(|_| rng.int_in(0, max_deg as i64) as u32).collect();
            p.add_term(Exps(exps), Rat::from_int(rng.int_in(-3, 3)));
        }
        if !p.is_zero() {
            comps.push((r, RatComponent::from_poly(p)));
        }
    }
    Mould::from_components(Kind::U, comps, Some(max_depth))
}

type CheckOutcome = std::result::Result<(), String>;

struct Check {
    id: &'static str,
    run: Box<dyn Fn() -> CheckOutcome>,
}

fn check(id: &'static str, run: impl Fn() -> CheckOutcome + 'static) -> Check {
    Check {
        id,
        run: Box::new(run),
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> CheckOutcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Core,
    Mould,
    Main,
    AppendixA,
    AppendixB,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Mould => "mould",
            Suite::Main => "main",
            Suite::AppendixA => "appendix-a",
            Suite::AppendixB => "appendix-b",
            Suite::All => "all",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        match s {
            "core" => Some(Suite::Core),
            "mould" => Some(Suite::Mould),
            "main" => Some(Suite::Main),
            "appendix-a" => Some(Suite::AppendixA),
            "appendix-b" => Some(Suite::AppendixB),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn names() -> &'static [&'static str] {
        &["core", "mould", "main", "appendix-a", "appendix-b", "all"]
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub pass: bool,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

/// Runs a suite; the overall status is the conjunction of its checks.
pub fn run_suite(suite: Suite) -> SuiteResult {
    let mut checks = Vec::new();
    match suite {
        Suite::Core => checks.extend(core_checks()),
        Suite::Mould => checks.extend(mould_checks()),
        Suite::Main => checks.extend(main_checks()),
        Suite::AppendixA => checks.extend(appendix_a_checks()),
        Suite::AppendixB => checks.extend(appendix_b_checks()),
        Suite::All => {
            checks.extend(core_checks());
            checks.extend(mould_checks());
            checks.extend(main_checks());
            checks.extend(appendix_a_checks());
            checks.extend(appendix_b_checks());
        }
    }
    let mut results = Vec::new();
    for c in checks {
        let t0 = Instant::now();
        let outcome = (c.run)();
        results.push(CheckResult {
            id: c.id.to_string(),
            pass: outcome.is_ok(),
            elapsed_ms: t0.elapsed().as_millis(),
            detail: outcome.err(),
        });
    }
    SuiteResult {
        suite: suite.name().to_string(),
        pass: results.iter().all(|r| r.pass),
        checks: results,
    }
}

fn eps(i: u64) -> Derivation {
    make_eps(i).expect("even index")
}

/// Bracket words in the generators up to total weight 16: the generators
/// themselves, pairs, and left-nested triples.
fn bracket_family_to_weight_16() -> Vec<(String, Derivation)> {
    let idx = [0u64, 4, 6, 8, 10, 12, 14, 16];
    let mut out = Vec::new();
    for &i in &idx {
        out.push((format!("eps({i})"), eps(i)));
    }
    for &i in &idx {
        for &j in &idx {
            if i < j && i + j <= 16 {
                out.push((format!("[eps({i}),eps({j})]"), eps(i).bracket(&eps(j))));
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                if i + j + k <= 16 && j < k {
                    out.push((
                        format!("[eps({i}),[eps({j}),eps({k})]]"),
                        eps(i).bracket(&eps(j).bracket(&eps(k))),
                    ));
                }
            }
        }
    }
    out
}

fn core_checks() -> Vec<Check> {
    vec![
        check("core/eps-kills-ab", || {
            for i in 0..=8u64 {
                let d = make_eps(2 * i).map_err(e)?;
                ensure(d.kills_ab(), format!("eps_{} does not kill [a,b]", 2 * i))?;
            }
            Ok(())
        }),
        check("core/eps2-central-to-weight-16", || {
            let e2 = eps(2);
            for (label, x) in bracket_family_to_weight_16() {
                ensure(
                    e2.bracket(&x).is_zero(),
                    format!("[eps(2), {label}] is nonzero"),
                )?;
            }
            Ok(())
        }),
        check("core/derivation-values-push-invariant", || {
            for (label, d) in [
                ("[eps(0),eps(4)]", eps(0).bracket(&eps(4))),
                ("[eps(4),eps(6)]", eps(4).bracket(&eps(6))),
                (
                    "[eps(4),[eps(0),eps(6)]]",
                    eps(4).bracket(&eps(0).bracket(&eps(6))),
                ),
                ("h(2,10,3)", make_h(2, 10, 3).map_err(e)?.derivation),
            ] {
                ensure(
                    d.val_a().is_push_invariant(),
                    format!("{label}(a) is not push-invariant"),
                )?;
            }
            Ok(())
        }),
        check("core/recover-partner-matches-eps", || {
            for i in 1..=6u64 {
                let d = eps(2 * i);
                let p = LieElement::new(d.val_a().clone()).map_err(e)?;
                let q = recover_partner(&p).map_err(e)?;
                ensure(
                    q.poly() == d.val_b(),
                    format!("partner of eps_{}(a) is wrong", 2 * i),
                )?;
            }
            Ok(())
        }),
        check("core/factor-ad-a-criterion-both-ways", || {
            let mut rng = DetRng::new(11);
            let mut successes = 0;
            let mut failures = 0;
            for weight in 4..=9usize {
                for depth in 1..=3usize {
                    for _ in 0..4 {
                        let p = random_lie(&mut rng, weight, depth);
                        if p.poly().is_zero() {
                            continue;
                        }
                        let criterion = !p.poly().terms().any(|(w, _)| {
                            w.0.first() == Some(&B) && w.0.last() == Some(&B)
                        });
                        match factor_ad_a(&p) {
                            Ok(q) => {
                                successes += 1;
                                ensure(criterion, "factor succeeded despite b...b monomial")?;
                                let a = NcPoly::letter(Alphabet::Ab, crate::ncalg::A);
                                ensure(
                                    a.lie_bracket(q.poly()) == *p.poly(),
                                    "factor does not reproduce P",
                                )?;
                            }
                            Err(crate::Error::NoFactor) => {
                                failures += 1;
                                ensure(!criterion, "factor refused although criterion holds")?;
                            }
                            Err(other) => return Err(e(other)),
                        }
                    }
                }
            }
            ensure(
                successes > 0 && failures > 0,
                "sample did not exercise both directions",
            )
        }),
        check("core/poisson-is-derivation-bracket", || {
            let mut rng = DetRng::new(23);
            for _ in 0..8 {
                let (w1, d1) = (rng.int_in(2, 5) as usize, rng.int_in(1, 2) as usize);
                let (w2, d2) = (rng.int_in(2, 5) as usize, rng.int_in(1, 2) as usize);
                let p = random_lie(&mut rng, w1, d1);
                let q = random_lie(&mut rng, w2, d2);
                let lhs = crate::derivations::d_of(poisson(&p, &q).poly());
                let rhs = crate::derivations::d_of(p.poly()).bracket(&crate::derivations::d_of(q.poly()));
                ensure(lhs == rhs, "D_{P,Q} != [D_P, D_Q]")?;
            }
            Ok(())
        }),
        check("core/theta3-membership-examples", || {
            let t = c_poly(2).lie_bracket(&c_poly(2).lie_bracket(&c_poly(3)));
            let w = theta3_membership(&t).map_err(e)?;
            ensure(w.expand() == t, "witness does not re-expand")?;
            let bad = c_poly(1).lie_bracket(&c_poly(2).lie_bracket(&c_poly(3)));
            ensure(
                theta3_membership(&bad) == Err(crate::Error::NotMember),
                "i = 0 bracket wrongly accepted",
            )
        }),
        check("core/derivation-jacobi", || {
            let gens = [eps(0), eps(4), eps(6), eps(8)];
            for x in &gens {
                for y in &gens {
                    for z in &gens {
                        let j = x
                            .bracket(y)
                            .bracket(z)
                            .add(&y.bracket(z).bracket(x))
                            .add(&z.bracket(x).bracket(y));
                        ensure(j.is_zero(), "Jacobi fails")?;
                    }
                    ensure(
                        x.bracket(y) == y.bracket(x).scale(&-Rat::one()),
                        "antisymmetry fails",
                    )?;
                }
            }
            Ok(())
        }),
        check("core/lyndon-witt-dimensions", || {
            for n in 2..=9usize {
                ensure(
                    lyndon_words(n, None).len() == witt_dimension(n),
                    format!("Lyndon count != Witt number at weight {n}"),
                )?;
                // expanded basis has full rank
                let basis = lyndon_lie_basis(n, None);
                let mut words: Vec<Word> = Vec::new();
                for el in &basis {
                    for (w, _) in el.poly().terms() {
                        if !words.contains(w) {
                            words.push(w.clone());
                        }
                    }
                }
                words.sort();
                let cols: Vec<Vec<Rat>> = basis
                    .iter()
                    .map(|el| words.iter().map(|w| el.poly().coeff(&w.0)).collect())
                    .collect();
                ensure(
                    RatMatrix::from_cols(cols).rank() == witt_dimension(n),
                    format!("Lyndon span rank wrong at weight {n}"),
                )?;
            }
            Ok(())
        }),
        check("core/star-projection-ab-example", || {
            let a = NcPoly::letter(Alphabet::Ab, crate::ncalg::A);
            let b = NcPoly::letter(Alphabet::Ab, B);
            let s = a.lie_bracket(&b).star();
            let alph = Alphabet::BSeries { max: 2 };
            let mut expected = NcPoly::zero(alph);
            expected.add_term(Word(vec![1]), Rat::one());
            expected.add_term(Word(vec![0, 0]), Rat::new(-1, 2));
            ensure(s == expected, "star([a,b]) != b2 - (1/2) b1^2")
        }),
        check("core/h-elements-highest-weight", || {
            for (p, q, d) in [(2u64, 8u64, 2u32), (2, 10, 3), (4, 8, 3), (6, 6, 3)] {
                let h = make_h(p, q, d).map_err(e)?;
                ensure(
                    h.derivation.is_highest_weight(),
                    format!("h^{d}_{{{p},{q}}} is not highest weight"),
                )?;
            }
            ensure(!eps(0).is_highest_weight(), "eps_0 looks highest weight")?;
            ensure(
                make_phi0().bracket(&make_phi0()).is_zero(),
                "[phi0, phi0] != 0",
            )
        }),
    ]
}

/// Left-nested ari-bracket words over the singular generators, depths 2..4,
/// plus a sample of (2,2)-shaped brackets. The brackets are independent of
/// each other, so each stage is computed in parallel; order-preserving
/// collection keeps the family deterministic.
pub fn singular_bracket_family() -> Vec<(String, Mould)> {
    use rayon::prelude::*;
    let gens: Vec<(i64, Mould)> = [-2i64, 2, 4, 6, 8]
        .iter()
        .map(|&i| (i, make_u(i).expect("valid index")))
        .collect();
    let mut pair_jobs: Vec<(String, &Mould, &Mould)> = Vec::new();
    for (i, a) in &gens {
        for (j, b) in &gens {
            if i < j {
                pair_jobs.push((format!("ari(U{i},U{j})"), a, b));
            }
        }
    }
    let pairs: Vec<(String, Mould)> = pair_jobs
        .into_par_iter()
        .map(|(l, a, b)| (l, mould_ari(a, b).expect("ari")))
        .collect();
    let triple_jobs: Vec<(String, &Mould, &Mould)> = gens
        .iter()
        .flat_map(|(i, a)| {
            pairs
                .iter()
                .map(move |(pl, p)| (format!("ari(U{i},{pl})"), a, p))
        })
        .collect();
    let triples: Vec<(String, Mould)> = triple_jobs
        .into_par_iter()
        .map(|(l, a, b)| (l, mould_ari(a, b).expect("ari")))
        .collect();
    let mut quad_jobs: Vec<(String, &Mould, &Mould)> = gens
        .iter()
        .flat_map(|(i, a)| {
            triples
                .iter()
                .map(move |(tl, t)| (format!("ari(U{i},{tl})"), a, t))
        })
        .collect();
    for (k, (pl, p)) in pairs.iter().enumerate() {
        for (ql, q) in pairs.iter().skip(k + 1).take(2) {
            quad_jobs.push((format!("ari({pl},{ql})"), p, q));
        }
    }
    let quads: Vec<(String, Mould)> = quad_jobs
        .into_par_iter()
        .map(|(l, a, b)| (l, mould_ari(a, b).expect("ari")))
        .collect();
    let mut out = pairs;
    out.extend(triples);
    out.extend(quads);
    out
}

fn mould_checks() -> Vec<Check> {
    vec![
        check("mould/ma-transports-poisson-to-ari", || {
            let mut rng = DetRng::new(37);
            let mut done = 0;
            while done < 50 {
                let (w1, d1) = (rng.int_in(2, 5) as usize, rng.int_in(1, 2) as usize);
                let (w2, d2) = (rng.int_in(2, 5) as usize, rng.int_in(1, (3 - d1) as i64) as usize);
                let p = random_lie(&mut rng, w1, d1);
                let q = random_lie(&mut rng, w2, d2);
                if p.poly().is_zero() || q.poly().is_zero() {
                    continue;
                }
                let lhs = ma(poisson(&p, &q).poly()).map_err(e)?;
                let rhs = mould_ari(&ma(p.poly()).map_err(e)?, &ma(q.poly()).map_err(e)?)
                    .map_err(e)?;
                ensure(lhs.eq_through(&rhs, d1 + d2), "ma{P,Q} != ari(maP, maQ)")?;
                done += 1;
            }
            Ok(())
        }),
        check("mould/ma-of-ad-a", || {
            let mut rng = DetRng::new(41);
            let a = NcPoly::letter(Alphabet::Ab, crate::ncalg::A);
            let mut done = 0;
            while done < 50 {
                let (w, d) = (rng.int_in(2, 7) as usize, rng.int_in(1, 3) as usize);
                let q = random_lie(&mut rng, w, d);
                if q.poly().is_zero() {
                    continue;
                }
                let lhs = ma(&a.lie_bracket(q.poly())).map_err(e)?;
                let rhs = ma(q.poly()).map_err(e)?;
                let sum = LinForm::all_ones(d);
                ensure(
                    lhs.component(d) == rhs.component(d).mul_form(&sum).scale(&-Rat::one()),
                    "ma([a,Q]) != -(u_1+...+u_r) ma(Q)",
                )?;
                done += 1;
            }
            Ok(())
        }),
        check("mould/push-equivalence", || {
            let mut rng = DetRng::new(43);
            let mut invariant_seen = 0;
            let mut variant_seen = 0;
            // push-invariant instances: values of derivations on a
            for d in [
                eps(4).bracket(&eps(6)),
                eps(0).bracket(&eps(8)),
                eps(4).bracket(&eps(0).bracket(&eps(6))),
            ] {
                let p = d.val_a();
                ensure(p.is_push_invariant(), "derivation value not push-invariant")?;
                let m = ma(p).map_err(e)?;
                ensure(
                    m.push().map_err(e)?.eq_through(&m, 4),
                    "ma of push-invariant P is not push-invariant",
                )?;
                invariant_seen += 1;
            }
            // random Lie elements, both directions
            let mut done = 0;
            while done < 50 {
                let (w, d) = (rng.int_in(2, 7) as usize, rng.int_in(1, 3) as usize);
                let p = random_lie(&mut rng, w, d);
                if p.poly().is_zero() {
                    continue;
                }
                let m = ma(p.poly()).map_err(e)?;
                let poly_inv = p.poly().is_push_invariant();
                let mould_inv = m.push().map_err(e)?.eq_through(&m, d);
                ensure(poly_inv == mould_inv, "push equivalence fails")?;
                if poly_inv {
                    invariant_seen += 1;
                } else {
                    variant_seen += 1;
                }
                done += 1;
            }
            ensure(
                invariant_seen > 0 && variant_seen > 0,
                "push sample did not exercise both directions",
            )
        }),
        check("mould/singular-closure-depth-4", || {
            use rayon::prelude::*;
            let family = singular_bracket_family();
            let reports: Vec<(String, bool)> = family
                .par_iter()
                .map(|(label, m)| {
                    let ok = m
                        .singularity_report()
                        .map(|rep| rep.all_polynomial())
                        .unwrap_or(false);
                    (label.clone(), ok)
                })
                .collect();
            for (label, ok) in reports {
                ensure(ok, format!("Delta_r does not clear {label}"))?;
            }
            Ok(())
        }),
        check("mould/psi-on-generator-brackets", || {
            for i in 0..=6u64 {
                for j in 0..=6u64 {
                    let lhs = psi(&eps(2 * i).bracket(&eps(2 * j))).map_err(e)?;
                    let rhs = mould_ari(
                        &make_u(2 * i as i64 - 2).map_err(e)?,
                        &make_u(2 * j as i64 - 2).map_err(e)?,
                    )
                    .map_err(e)?;
                    ensure(
                        lhs.eq_through(&rhs, 2),
                        format!("psi([eps_{},eps_{}]) mismatch", 2 * i, 2 * j),
                    )?;
                }
            }
            let lhs = psi(&eps(4).bracket(&eps(4).bracket(&eps(6)))).map_err(e)?;
            let rhs = mould_ari(
                &make_u(2).map_err(e)?,
                &mould_ari(&make_u(2).map_err(e)?, &make_u(4).map_err(e)?).map_err(e)?,
            )
            .map_err(e)?;
            ensure(lhs.eq_through(&rhs, 3), "depth-3 psi instance mismatch")
        }),
        check("mould/ari-preserves-alternality", || {
            let mut rng = DetRng::new(53);
            let mut inputs: Vec<Mould> = vec![
                make_u(-2).map_err(e)?,
                make_u(4).map_err(e)?,
            ];
            for _ in 0..4 {
                let (w, d) = (rng.int_in(3, 6) as usize, rng.int_in(1, 2) as usize);
                let p = random_lie(&mut rng, w, d);
                if !p.poly().is_zero() {
                    inputs.push(ma(p.poly()).map_err(e)?);
                }
            }
            for a in &inputs {
                ensure(a.is_alternal(), "input is not alternal")?;
                for b in &inputs {
                    let br = mould_ari(a, b).map_err(e)?;
                    ensure(br.is_alternal(), "ari output lost alternality")?;
                }
            }
            Ok(())
        }),
        check("mould/alternal-reversal-law", || {
            // A(u_1,...,u_r) = (-1)^{r-1} A(u_r,...,u_1) for alternal moulds
            let mut rng = DetRng::new(59);
            let mut samples: Vec<Mould> = vec![
                mould_ari(&make_u(-2).map_err(e)?, &make_u(2).map_err(e)?).map_err(e)?,
                mould_ari(
                    &make_u(2).map_err(e)?,
                    &mould_ari(&make_u(2).map_err(e)?, &make_u(4).map_err(e)?).map_err(e)?,
                )
                .map_err(e)?,
            ];
            for _ in 0..3 {
                let d = rng.int_in(2, 3) as usize;
                let p = random_lie(&mut rng, 6, d);
                if !p.poly().is_zero() {
                    samples.push(ma(p.poly()).map_err(e)?);
                }
            }
            for m in &samples {
                ensure(m.is_alternal(), "sample not alternal")?;
                let limit = m.depth_bound().unwrap_or_else(|| m.max_support());
                for r in 1..=limit {
                    let c = m.component(r);
                    let images: Vec<Vec<i64>> = (0..r)
                        .map(|i| {
                            let mut im = vec![0i64; r];
                            im[r - 1 - i] = 1;
                            im
                        })
                        .collect();
                    let reversed = c.substitute_linear(&images, r).map_err(e)?;
                    let sign = if (r - 1) % 2 == 0 {
                        Rat::one()
                    } else {
                        -Rat::one()
                    };
                    ensure(c == reversed.scale(&sign), format!("reversal law fails at depth {r}"))?;
                }
            }
            Ok(())
        }),
        check("mould/ari-jacobi-depth-4", || {
            let mut rng = DetRng::new(61);
            let a = random_poly_mould(&mut rng, 4, 2);
            let b = random_poly_mould(&mut rng, 4, 2);
            let c = random_poly_mould(&mut rng, 4, 2);
            let j = mould_ari(&mould_ari(&a, &b).map_err(e)?, &c)
                .map_err(e)?
                .add(&mould_ari(&mould_ari(&b, &c).map_err(e)?, &a).map_err(e)?)
                .map_err(e)?
                .add(&mould_ari(&mould_ari(&c, &a).map_err(e)?, &b).map_err(e)?)
                .map_err(e)?;
            ensure(
                j.eq_through(&Mould::zero(Kind::U), 4),
                "ari Jacobi fails through depth 4",
            )?;
            // antisymmetry and bilinearity spot checks
            let anti = mould_ari(&a, &b)
                .map_err(e)?
                .add(&mould_ari(&b, &a).map_err(e)?)
                .map_err(e)?;
            ensure(anti.eq_through(&Mould::zero(Kind::U), 4), "ari antisymmetry")?;
            let s = a.add(&b).map_err(e)?;
            let lin = mould_ari(&s, &c).map_err(e)?;
            let split = mould_ari(&a, &c)
                .map_err(e)?
                .add(&mould_ari(&b, &c).map_err(e)?)
                .map_err(e)?;
            ensure(lin.eq_through(&split, 4), "ari bilinearity")
        }),
        check("mould/bialternals-are-push-invariant", || {
            for (m, d) in [(6u32, 2usize), (8, 2), (8, 3)] {
                for basis_mould in bialternal_space(m, d) {
                    ensure(
                        basis_mould.is_push_invariant().map_err(e)?,
                        format!("bialternal of degree {m}, depth {d} not push-invariant"),
                    )?;
                }
            }
            Ok(())
        }),
        check("mould/mu-matches-word-product", || {
            let mut rng = DetRng::new(67);
            for _ in 0..10 {
                let (w1, d1) = (rng.int_in(2, 5) as usize, rng.int_in(1, 2) as usize);
                let (w2, d2) = (rng.int_in(2, 5) as usize, rng.int_in(1, 2) as usize);
                let f = random_lie(&mut rng, w1, d1);
                let g = random_lie(&mut rng, w2, d2);
                if f.poly().is_zero() || g.poly().is_zero() {
                    continue;
                }
                let lhs = mould_mu(&ma(f.poly()).map_err(e)?, &ma(g.poly()).map_err(e)?)
                    .map_err(e)?;
                let rhs = ma(&f.poly().nc_mul(g.poly())).map_err(e)?;
                ensure(lhs.eq_through(&rhs, 4), "mu(ma F, ma G) != ma(FG)")?;
            }
            Ok(())
        }),
        check("mould/swap-is-involutive", || {
            let samples = vec![
                make_u(2).map_err(e)?,
                mould_ari(&make_u(-2).map_err(e)?, &make_u(4).map_err(e)?).map_err(e)?,
                mould_ari(
                    &make_u(2).map_err(e)?,
                    &mould_ari(&make_u(4).map_err(e)?, &make_u(6).map_err(e)?).map_err(e)?,
                )
                .map_err(e)?,
            ];
            for m in &samples {
                ensure(m.swap().swap().eq_through(m, 3), "swap is not involutive")?;
            }
            Ok(())
        }),
    ]
}

fn cusp_dim(k: u64) -> usize {
    // level-1 cusp form dimension, even weight
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

/// Coefficients of a depth-`d` polynomial over the `b_1..b_n` alphabet
/// against all length-`d` words, in lexicographic order.
fn b_word_coords(p: &NcPoly, n: usize, d: usize) -> Vec<Rat> {
    fn rec(letters: usize, len: usize, acc: &mut Vec<u8>, p: &NcPoly, out: &mut Vec<Rat>) {
        if acc.len() == len {
            out.push(p.coeff(acc));
            return;
        }
        for l in 0..letters as u8 {
            acc.push(l);
            rec(letters, len, acc, p, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), p, &mut out);
    out
}

fn main_checks() -> Vec<Check> {
    vec![
        check("main/depth2-weight14-relation", || {
            let cert = relation_kernel(14, 2).map_err(e)?;
            ensure(cert.basis == vec![(2, 8), (4, 6)], "basis labels")?;
            ensure(cert.kernel.len() == 1, "kernel dimension != 1")?;
            ensure(
                cert.kernel[0].coeffs == vec![Rat::one(), Rat::from_int(-3)],
                "kernel vector is not (1, -3)",
            )?;
            let basis = h_basis(14, 2).map_err(e)?;
            let combo = combine(&basis, &cert.kernel[0].coeffs);
            ensure(combo.is_zero(), "h^2_{2,8} - 3 h^2_{4,6} is not the zero derivation")?;
            ensure(verify_certificate(&cert).map_err(e)?, "re-verification")
        }),
        check("main/depth3-weight16-relation-and-lift", || {
            let cert = relation_kernel_with_lift(16, 3).map_err(e)?;
            ensure(cert.basis == vec![(2, 10), (4, 8), (6, 6)], "basis labels")?;
            ensure(cert.kernel.len() == 1, "kernel dimension != 1")?;
            let kv = &cert.kernel[0];
            ensure(
                kv.coeffs == vec![Rat::from_int(4), Rat::from_int(-25), Rat::from_int(21)],
                "kernel vector is not (4, -25, 21)",
            )?;
            let basis = h_basis(16, 3).map_err(e)?;
            let combo = combine(&basis, &kv.coeffs);
            ensure(combo.is_highest_weight(), "combination is not highest weight")?;
            let w = kv.theta3_witness.as_ref().ok_or("missing witness")?;
            ensure(w.expand() == *combo.val_a(), "witness does not re-expand")?;
            let lift = kv.lift.as_ref().ok_or("missing lift")?;
            let mut re = Derivation::zero();
            for (idx, c) in lift.family.iter().zip(&lift.coeffs) {
                let t = eps(idx[0]).bracket(&eps(idx[1]).bracket(&eps(idx[2])));
                re = re.add(&t.scale(c));
            }
            ensure(re == combo, "lift does not re-expand to the combination")?;
            ensure(
                lift.coeffs.iter().any(|c| !c.is_zero()),
                "lift is trivial",
            )?;
            // the candidate comparisons must be recorded; their outcomes are
            // data carried by the certificate, not assertions
            ensure(lift.candidates.len() == 2, "candidate records missing")
        }),
        check("main/kernel-dimensions-match-cusp-dimensions", || {
            for n in [8u64, 10, 12, 14, 16] {
                let cert = relation_kernel(n, 2).map_err(e)?;
                ensure(
                    cert.kernel.len() == cusp_dim(n - 2),
                    format!("depth-2 kernel dim at weight {n}"),
                )?;
            }
            for n in [10u64, 12, 14, 16] {
                let cert = relation_kernel(n, 3).map_err(e)?;
                ensure(
                    cert.kernel.len() == cusp_dim(n - 4),
                    format!("depth-3 kernel dim at weight {n}"),
                )?;
            }
            Ok(())
        }),
        check("main/depth2-kernels-kill-b-image-too", || {
            let cert = relation_kernel(14, 2).map_err(e)?;
            let basis = h_basis(14, 2).map_err(e)?;
            for kv in &cert.kernel {
                let combo = combine(&basis, &kv.coeffs);
                ensure(combo.val_b().is_zero(), "b-image does not vanish")?;
            }
            Ok(())
        }),
        check("main/goncharov-spanning-sweep", || {
            for n in [6u64, 8, 10, 12, 14, 16] {
                let row = goncharov_span_check(n).map_err(e)?;
                ensure(
                    row.dim_bialternal == row.dim_generated,
                    format!(
                        "weight {n}: bialternal {} != generated {}",
                        row.dim_bialternal, row.dim_generated
                    ),
                )?;
            }
            Ok(())
        }),
        check("main/relation-mould-is-bialternal-and-spanned", || {
            let cert = relation_kernel(16, 3).map_err(e)?;
            let basis = h_basis(16, 3).map_err(e)?;
            let d = combine(&basis, &cert.kernel[0].coeffs);
            let m = psi(&d).map_err(e)?;
            ensure(
                m.component(3).is_polynomial(),
                "psi(D) is not polynomial (Delta_3 does not divide)",
            )?;
            ensure(m.is_bialternal().map_err(e)?, "psi(D) is not bialternal")?;
            ensure(in_u_span(&m, 16).map_err(e)?, "psi(D) is outside the generated span")
        }),
        check("main/ls-bialternal-correspondence", || {
            for (n, d) in [
                (8usize, 2usize),
                (10, 2),
                (12, 2),
                (14, 2),
                (9, 3),
                (10, 3),
                (11, 3),
                (12, 3),
                (13, 3),
                (14, 3),
            ] {
                let basis = bialternal_space((n - d) as u32, d);
                for m in &basis {
                    let p = ma_inverse(m).map_err(e)?;
                    ensure(is_ls(&p).map_err(e)?, format!("pullback at ({n},{d}) not in ls"))?;
                    ensure(
                        ma(p.poly()).map_err(e)?.eq_through(m, d),
                        "ma round trip",
                    )?;
                }
                // dual route: dimension of ls computed from the star
                // projection's Dynkin constraint in Lyndon coordinates
                let lie_basis = lyndon_lie_basis(n, Some(d));
                let mut defects: Vec<Vec<Rat>> = Vec::new();
                for el in &lie_basis {
                    let star = el.poly().star_projection(d).map_err(e)?;
                    let theta = star.dynkin().sub(&star.scale(&Rat::from_int(d as i64)));
                    defects.push(b_word_coords(&theta, n, d));
                }
                let ls_dim = if defects.is_empty() {
                    0
                } else {
                    RatMatrix::from_cols(defects).kernel_basis().len()
                };
                ensure(
                    ls_dim == basis.len(),
                    format!(
                        "({n},{d}): ls dimension {ls_dim} != bialternal dimension {}",
                        basis.len()
                    ),
                )?;
            }
            Ok(())
        }),
        check("main/certificate-reverification", || {
            let cert = relation_kernel_with_lift(16, 3).map_err(e)?;
            ensure(verify_certificate(&cert).map_err(e)?, "16/3 certificate")?;
            let cert = relation_kernel(12, 2).map_err(e)?;
            ensure(verify_certificate(&cert).map_err(e)?, "12/2 certificate")
        }),
    ]
}

fn appendix_a_checks() -> Vec<Check> {
    vec![
        check("appendix-a/eq-a4-swap-equivariance", || {
            let u2 = make_u(2).map_err(e)?;
            let u4 = make_u(4).map_err(e)?;
            let um2 = make_u(-2).map_err(e)?;
            let pairs: Vec<(String, Mould, Mould)> = vec![
                ("U2,U4".into(), u2.clone(), u4.clone()),
                ("U-2,U4".into(), um2.clone(), u4.clone()),
                (
                    "U2,ari(U2,U4)".into(),
                    u2.clone(),
                    mould_ari(&u2, &u4).map_err(e)?,
                ),
                (
                    "U-2,ari(U-2,U4)".into(),
                    um2.clone(),
                    mould_ari(&um2, &u4).map_err(e)?,
                ),
                (
                    "ari(U2,U4),U-2".into(),
                    mould_ari(&u2, &u4).map_err(e)?,
                    um2.clone(),
                ),
            ];
            for (label, a, b) in &pairs {
                ensure(
                    a.is_push_invariant().map_err(e)? && b.is_push_invariant().map_err(e)?,
                    format!("{label}: inputs must be push-invariant"),
                )?;
                let lhs = mould_ari(&a.swap(), &b.swap()).map_err(e)?;
                let rhs = mould_ari(a, b).map_err(e)?.swap();
                ensure(lhs.eq_through(&rhs, 4), format!("{label}: eq (A.4) fails"))?;
            }
            Ok(())
        }),
        check("appendix-a/boundary-identity-on-singular-swaps", || {
            let um2 = make_u(-2).map_err(e)?;
            let u2 = make_u(2).map_err(e)?;
            let u4 = make_u(4).map_err(e)?;
            for (label, x) in [
                ("ari(U2,U4)", mould_ari(&u2, &u4).map_err(e)?),
                ("ari(U-2,U2)", mould_ari(&um2, &u2).map_err(e)?),
                (
                    "ari(U-2,ari(U2,U4))",
                    mould_ari(&um2, &mould_ari(&u2, &u4).map_err(e)?).map_err(e)?,
                ),
                (
                    "ari(U-2,ari(U-2,U4))",
                    mould_ari(&um2, &mould_ari(&um2, &u4).map_err(e)?).map_err(e)?,
                ),
            ] {
                ensure(x.is_alternal(), format!("{label} should be alternal"))?;
                let ok = check_boundary_identity(&x.swap()).map_err(e)?;
                ensure(ok, format!("{label}: boundary identity fails"))?;
            }
            Ok(())
        }),
    ]
}

/// The expressions displayed for the base case of the `Darit`
/// correspondence, built literally: both arrangements of the divided
/// differences over `Delta_{r+1}` for `U` of depth `r` and `F = C_n`.
fn base_case_displays(u: &NcPoly, n: u32) -> (Mould, Mould) {
    let ma_u = ma(u).expect("U in C-span");
    let r = ma_u.max_support();
    let arity = r + 1;
    let ma_low = ma_u.component(r).num().clone(); // ma(U)(u_1..u_r), arity r
    let shift_embed = |offset: usize| -> MPoly {
        let images: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                let mut im = vec![0i64; arity];
                im[j + offset] = 1;
                im
            })
            .collect();
        ma_low.substitute_linear(&images, arity)
    };
    let embed_lo = shift_embed(0); // ma(U)(u_1..u_r)
    let embed_hi = shift_embed(1); // ma(U)(u_2..u_{r+1})
    let sum_all = LinForm::all_ones(arity).as_mpoly(arity);
    let u1 = MPoly::var(arity, 0);
    let ur1 = MPoly::var(arity, arity - 1);
    let tail_form = LinForm::canonicalize(
        &(0..arity)
            .map(|i| if i == 0 { 0 } else { 1 })
            .collect::<Vec<_>>(),
    )
    .unwrap()
    .0; // u_2 + ... + u_{r+1}
    let head_form = LinForm::canonicalize(
        &(0..arity)
            .map(|i| if i == arity - 1 { 0 } else { 1 })
            .collect::<Vec<_>>(),
    )
    .unwrap()
    .0; // u_1 + ... + u_r
    let delta = delta_u_factors(arity);
    let sign = |k: u32| {
        if k.is_multiple_of(2) {
            Rat::one()
        } else {
            -Rat::one()
        }
    };
    // first display: (-1)^{n-1} [ maU(u_2..) ((S^{n-1} u_1 - u_1^{n-1} S)/(u_2+..)) -
    //                            maU(u_1..) ((S^{n-1} u_{r+1} - u_{r+1}^{n-1} S)/(u_1+..)) ] / Delta
    let t1 = sum_all
        .pow(n - 1)
        .mul(&u1)
        .sub(&u1.pow(n - 1).mul(&sum_all))
        .divide_exact(&tail_form)
        .expect("divided difference is exact");
    let t2 = sum_all
        .pow(n - 1)
        .mul(&ur1)
        .sub(&ur1.pow(n - 1).mul(&sum_all))
        .divide_exact(&head_form)
        .expect("divided difference is exact");
    let first = embed_hi
        .mul(&t1)
        .sub(&embed_lo.mul(&t2))
        .scale(&sign(n - 1));
    let first = RatComponent::new(first, delta.iter().map(|f| (f.clone(), 1)).collect());
    // second display: (-1)^n [ maU(u_1..)/(u_1..u_r(u_1+..+u_r)) (S^{n-2} - u_{r+1}^{n-2})
    //                        + maU(u_2..)/(u_2..u_{r+1}(u_2+..+u_{r+1})) (u_1^{n-2} - S^{n-2}) ]
    let mut lo_den: Vec<(LinForm, u32)> = (0..r).map(|i| (LinForm::unit_var(arity, i), 1)).collect();
    lo_den.push((head_form, 1));
    let mut hi_den: Vec<(LinForm, u32)> =
        (1..arity).map(|i| (LinForm::unit_var(arity, i), 1)).collect();
    hi_den.push((tail_form, 1));
    let lo = RatComponent::new(embed_lo.mul(&sum_all.pow(n - 2).sub(&ur1.pow(n - 2))), lo_den);
    let hi = RatComponent::new(embed_hi.mul(&u1.pow(n - 2).sub(&sum_all.pow(n - 2))), hi_den);
    let second = lo.add(&hi).scale(&sign(n));
    (
        Mould::concentrated(Kind::U, arity, first),
        Mould::concentrated(Kind::U, arity, second),
    )
}

fn appendix_b_checks() -> Vec<Check> {
    vec![
        check("appendix-b/eq-b7-operator-identity", || {
            let mut rng = DetRng::new(71);
            for trial in 0..3 {
                let a = random_poly_mould(&mut rng, 4, 2);
                let b = random_poly_mould(&mut rng, 4, 2);
                let x = if trial == 2 {
                    // one singular target
                    mould_ari(&make_u(-2).map_err(e)?, &make_u(2).map_err(e)?).map_err(e)?
                } else {
                    random_poly_mould(&mut rng, 4, 2)
                };
                let lhs = mould_arit(&b, &mould_arit(&a, &x).map_err(e)?)
                    .map_err(e)?
                    .sub(&mould_arit(&a, &mould_arit(&b, &x).map_err(e)?).map_err(e)?)
                    .map_err(e)?;
                let rhs = mould_arit(&mould_ari(&a, &b).map_err(e)?, &x).map_err(e)?;
                ensure(lhs.eq_through(&rhs, 4), "eq (B.7) fails")?;
            }
            Ok(())
        }),
        check("appendix-b/darit-base-case", || {
            // n = 2: both sides vanish since D_U kills [a,b]
            let u = c_poly(3);
            let u_lie = LieElement::new(u.clone()).map_err(e)?;
            let partner = recover_partner(&u_lie).map_err(e)?;
            let d_u = Derivation::from_images(u.clone(), partner.poly().clone()).map_err(e)?;
            ensure(d_u.apply(&c_poly(2)).is_zero(), "D_{C_3}([a,b]) != 0")?;
            let rhs = darit(&u, &da(&c_poly(2)).map_err(e)?).map_err(e)?;
            ensure(
                rhs.eq_through(&Mould::zero(Kind::U), 2),
                "Darit base case n = 2 not zero",
            )?;
            // n = 4: the two displayed closed forms agree with each other,
            // and the flexion-computed value solves the defining identity.
            let (first, second) = base_case_displays(&u, 4);
            ensure(first.eq_through(&second, 2), "displayed closed forms disagree")?;
            let lhs = da(&d_u.apply(&c_poly(4)).clone()).map_err(e)?.scale(&-Rat::one());
            let rhs = darit(&u, &da(&c_poly(4)).map_err(e)?).map_err(e)?;
            ensure(lhs.eq_through(&rhs, 2), "-da(D_U C_4) != Darit_U da(C_4)")?;
            // the displays are written in the appendix-local sign convention:
            // they differ from the flexion value by the depth-parity sign
            ensure(
                rhs.eq_through(&first.scale(&-Rat::one()), 2),
                "display vs flexion value: unexpected relation",
            )
        }),
        check("appendix-b/darit-general-depth", || {
            let mut rng = DetRng::new(73);
            for u_idx in [3u32, 5] {
                let u = c_poly(u_idx);
                let u_lie = LieElement::new(u.clone()).map_err(e)?;
                let partner = recover_partner(&u_lie).map_err(e)?;
                let d_u = Derivation::from_images(u.clone(), partner.poly().clone()).map_err(e)?;
                let mut samples: Vec<NcPoly> = vec![
                    c_poly(2),
                    c_poly(4),
                    c_poly(2).lie_bracket(&c_poly(3)),
                    c_poly(2).lie_bracket(&c_poly(2).lie_bracket(&c_poly(3))),
                ];
                for _ in 0..3 {
                    let (w, d) = (rng.int_in(3, 6) as usize, rng.int_in(1, 3) as usize);
                    let f = random_lie(&mut rng, w, d);
                    if !f.poly().is_zero() {
                        samples.push(f.poly().clone());
                    }
                }
                for f in &samples {
                    let depth = f.homogeneous_depth().unwrap_or(0) + u_lie
                        .poly()
                        .homogeneous_depth()
                        .unwrap_or(1);
                    let lhs = da(&d_u.apply(f)).map_err(e)?.scale(&-Rat::one());
                    let rhs = darit(&u, &da(f).map_err(e)?).map_err(e)?;
                    ensure(
                        lhs.eq_through(&rhs, depth),
                        format!("Prop B.1 fails for U = C_{u_idx}"),
                    )?;
                }
            }
            Ok(())
        }),
        check("appendix-b/psi-is-a-bracket-homomorphism", || {
            // brackets of generators up to total weight 16
            let family: Vec<Derivation> = vec![
                eps(4),
                eps(6),
                eps(8),
                eps(0).bracket(&eps(4)),
                eps(0).bracket(&eps(6)),
                eps(4).bracket(&eps(6)),
            ];
            for x in &family {
                for y in &family {
                    if x.weight() + y.weight() > 16 {
                        continue;
                    }
                    let b = x.bracket(y);
                    if b.is_zero() {
                        continue;
                    }
                    let lhs = psi(&b).map_err(e)?;
                    let rhs = mould_ari(&psi(x).map_err(e)?, &psi(y).map_err(e)?).map_err(e)?;
                    ensure(lhs.eq_through(&rhs, 4), "psi([X,Y]) != ari(psi X, psi Y)")?;
                }
            }
            Ok(())
        }),
        check("appendix-b/da-delta-consistency", || {
            // Da = da followed by the extra (u_1 + ... + u_r) factor
            let f = c_poly(2).lie_bracket(&c_poly(3));
            let lo = da(&f).map_err(e)?;
            let hi = da_delta(&f).map_err(e)?;
            let sum = LinForm::all_ones(2);
            ensure(
                lo.component(2) == hi.component(2).mul_form(&sum),
                "da and Da differ by the full sum factor",
            )
        }),
    ]
}
