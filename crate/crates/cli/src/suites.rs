//! Verification suites, run on a worker pool. Work is split into
//! independent tasks and the partial reports are merged in a fixed order,
//! so the outcome does not depend on the number of workers.

use djkm_core::algebra::{
    basis_pairs, basis_triples, check_agreement, check_antisymmetry, check_jacobi, BasisKey, ClosedBracket,
    KasselBracket, PsiConvention,
};
use djkm_core::arith::Rational;
use djkm_core::fock::{
    heisenberg_relation_check, oscillator_relation_check, relation_test_states, FockState, HeisenbergSigns,
    RealizationParams,
};
use djkm_core::realization::{mode_apply, Conventions, EnumerationWindow, ModeOperator, Realization, GENERATORS};
use djkm_core::report::{Report, Violation};
use djkm_core::ring::DjkmRing;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::error::{CliError, Result};
use crate::states;

pub fn pool(workers: usize) -> Result<ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {workers} workers: {e}")))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

pub fn default_c0s() -> Vec<Rational> {
    vec![q(2, 1), q(3, 5), q(-7, 3)]
}

pub fn default_kappa0s() -> Vec<Rational> {
    vec![q(0, 1), q(1, 1), q(-4, 1)]
}

/// `(lambda, mu, nu, varkappa)` sets.
pub fn default_lambdas() -> Vec<[Rational; 4]> {
    vec![
        [q(5, 1), q(1, 1), q(2, 1), q(3, 1)],
        [q(0, 1), q(0, 1), q(0, 1), q(0, 1)],
    ]
}

pub fn params_grid(
    c0s: &[Rational],
    kappa0s: &[Rational],
    lambdas: &[[Rational; 4]],
    rs: &[u8],
    signs: HeisenbergSigns,
) -> Result<Vec<RealizationParams>> {
    let mut out = Vec::new();
    for &r in rs {
        for c0 in c0s {
            for kappa0 in kappa0s {
                for lam in lambdas {
                    let mut p = RealizationParams::new(c0.clone(), r, kappa0.clone(), lam.clone())?;
                    p.signs = signs;
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Antisymmetry on ordered basis pairs at `pair_window`, and Jacobi on
/// unordered triples of currents at `jacobi_window`, over `Q[c]`.
pub fn verify_lie_axioms(pair_window: i64, jacobi_window: i64, pool: &ThreadPool) -> Vec<(String, Report)> {
    let br = ClosedBracket::generic(pair_window.max(2 * jacobi_window + 4));
    let pairs = basis_pairs(pair_window);
    let triples = basis_triples(jacobi_window);
    pool.install(|| {
        let anti = pairs
            .par_chunks(512)
            .map(|chunk| {
                let mut r = Report::default();
                for (a, b) in chunk {
                    r.record(check_antisymmetry(&br, a, b));
                }
                r
            })
            .collect::<Vec<_>>();
        let jac = triples
            .par_chunks(512)
            .map(|chunk| {
                let mut r = Report::default();
                for [a, b, c] in chunk {
                    r.record(check_jacobi(&br, a, b, c));
                }
                r
            })
            .collect::<Vec<_>>();
        vec![
            ("antisymmetry".to_string(), Report::merge(anti)),
            ("jacobi".to_string(), Report::merge(jac)),
        ]
    })
}

/// Closed-form bracket against the Kassel-cocycle bracket on all ordered
/// basis pairs, over `Q[c]`.
pub fn verify_backends(window: i64, convention: PsiConvention, pool: &ThreadPool) -> Report {
    let closed = ClosedBracket::new(djkm_core::arith::PolyC::c(), window, convention);
    let kassel = KasselBracket::new(DjkmRing::generic());
    let pairs = basis_pairs(window);
    pool.install(|| {
        let parts = pairs
            .par_chunks(256)
            .map(|chunk| {
                let mut r = Report::default();
                for (a, b) in chunk {
                    r.record(check_agreement(&closed, &kassel, a, b));
                }
                r
            })
            .collect::<Vec<_>>();
        Report::merge(parts)
    })
}

/// Oscillator relations for `|m|, |n| <= osc_window` and Heisenberg
/// relations for `|m|, |n| <= heis_window`, on the relation test states.
pub fn verify_relations(
    heis_window: i64,
    osc_window: i64,
    params_list: &[RealizationParams],
    pool: &ThreadPool,
) -> Vec<(String, Report)> {
    let states = relation_test_states(heis_window.max(osc_window));
    let brackets: Vec<ClosedBracket<Rational>> = params_list
        .iter()
        .map(|p| ClosedBracket::new(p.c0.clone(), heis_window, PsiConvention::Derived))
        .collect();
    pool.install(|| {
        let osc_tasks: Vec<(usize, i64)> = (0..params_list.len())
            .flat_map(|i| (-osc_window..=osc_window).map(move |m| (i, m)))
            .collect();
        let osc = osc_tasks
            .par_iter()
            .map(|&(i, m)| {
                let parts =
                    (-osc_window..=osc_window).map(|n| oscillator_relation_check(m, n, &states, &params_list[i]));
                Report::merge(parts)
            })
            .collect::<Vec<_>>();
        let heis_tasks: Vec<(usize, i64)> = (0..params_list.len())
            .flat_map(|i| (-heis_window..=heis_window).map(move |m| (i, m)))
            .collect();
        let heis = heis_tasks
            .par_iter()
            .map(|&(i, m)| {
                let parts = (-heis_window..=heis_window)
                    .map(|n| heisenberg_relation_check(m, n, &states, &params_list[i], &brackets[i]));
                Report::merge(parts)
            })
            .collect::<Vec<_>>();
        vec![
            ("oscillator".to_string(), Report::merge(osc)),
            ("heisenberg".to_string(), Report::merge(heis)),
        ]
    })
}

/// Every commutator of the 21 unordered generator pairs at modes in
/// `[-window, window]`, for every parameter set and state. One task per
/// `(parameter set, state)`.
pub fn verify_fock(
    window: i64,
    params_list: &[RealizationParams],
    states: &[(String, FockState)],
    conventions: Conventions,
    pool: &ThreadPool,
) -> Result<Report> {
    let reals = params_list
        .iter()
        .map(|p| Realization::new(p.clone(), conventions, window))
        .collect::<djkm_core::Result<Vec<_>>>()?;
    let tasks: Vec<(usize, usize)> = (0..reals.len())
        .flat_map(|i| (0..states.len()).map(move |j| (i, j)))
        .collect();
    let parts = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(i, j)| reals[i].verify_state(window, &states[j].1, &states[j].0))
            .collect::<djkm_core::Result<Vec<_>>>()
    })?;
    Ok(Report::merge(parts))
}

/// Random `(generator, mode, state, parameters)` cases on which the
/// derived enumeration window and the doubled, unfiltered one must give
/// the same image.
pub fn enumeration_soundness(
    samples: usize,
    seed: u64,
    params_list: &[RealizationParams],
    pool: &ThreadPool,
) -> Result<Report> {
    if params_list.is_empty() {
        return Err(CliError::usage("no parameter sets"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suite = states::default_suite(seed);
    let cases: Vec<(usize, usize, i64, FockState)> = (0..samples)
        .map(|i| {
            let p = rng.gen_range(0..params_list.len());
            let g = rng.gen_range(0..GENERATORS.len());
            let m = rng.gen_range(-4..=4);
            let s = if i % 2 == 0 {
                suite.choose(&mut rng).expect("suite is not empty").1.clone()
            } else {
                states::random_monomial(rng.gen())
            };
            (p, g, m, s)
        })
        .collect();
    let conventions = Conventions::default();
    let parts = pool.install(|| {
        cases
            .par_iter()
            .map(|(p, g, m, s)| -> djkm_core::Result<Report> {
                let params = &params_list[*p];
                let (x, odd) = GENERATORS[*g];
                let expr = djkm_core::realization::tau_field(x, odd, params, conventions.e1_reading);
                let op = ModeOperator::new(&expr, *m)?;
                let normal = mode_apply(&op, s, params, EnumerationWindow::Normal)?;
                let wide = mode_apply(&op, s, params, EnumerationWindow::Widened)?;
                let mut r = Report::default();
                r.record((normal != wide).then(|| Violation {
                    witness: format!("{} on {s} ({params})", BasisKey::current(x, odd, *m)),
                    residual: wide.sub(&normal).to_string(),
                }));
                Ok(r)
            })
            .collect::<djkm_core::Result<Vec<_>>>()
    })?;
    Ok(Report::merge(parts))
}
