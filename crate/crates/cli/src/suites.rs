//! Invariant suites behind `verify`. A suite reports `Fail` when an identity
//! or bound does not hold and `Budget` when it refuses to run.

use std::sync::Arc;
use std::time::Instant;

use orecode::code::{DegreeSpec, DEFAULT_BUDGET};
use orecode::eval::{enumerate_characters, evaluate, Cocycle, EvalPoint};
use orecode::lag::{choose_n, embed_check, LagContext};
use orecode::lattice::ExpVec;
use orecode::nrd::{central_power, check_degree_bound, check_dimker, nrd, nrd_c1, nrd_c2, zero_sum};
use orecode::ore::{OrePoly, OreRing};
use orecode::sample::{random_laurent, random_nonzero, random_poly};
use orecode::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::Suite;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::report::{Status, SuiteResult};

fn default_samples(suite: Suite) -> usize {
    match suite {
        Suite::Ring => 500,
        Suite::Nrd | Suite::Zerosum => 200,
        Suite::Cocycle => 1000,
        Suite::Dimker => 500,
        Suite::Distance => 10_000,
        Suite::Embedding => 50,
    }
}

/// Canonical prolongations of all characters of the default lattice basis.
pub fn character_points(ring: &Arc<OreRing>) -> CliResult<Vec<EvalPoint>> {
    let basis = ring.default_lattice_basis()?;
    let adapted = ring.adapted()?;
    enumerate_characters(&basis, ring.ctx())
        .into_iter()
        .map(|ch| Ok(EvalPoint::Character(Cocycle::canonical(ring.ctx(), ring.twist(), adapted, ch)?)))
        .collect()
}

fn invariant(ok: bool, msg: impl FnOnce() -> String) -> orecode::Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(msg()))
    }
}

fn degree(cfg: &RunConfig) -> u32 {
    cfg.spec.d().max(1)
}

struct Outcome {
    checks: usize,
    measured_d: Option<u64>,
    pass: bool,
    detail: String,
}

impl Outcome {
    fn passed(checks: usize, detail: impl Into<String>) -> Self {
        Outcome { checks, measured_d: None, pass: true, detail: detail.into() }
    }
}

fn ring_suite(ring: &Arc<OreRing>, n: usize, rng: &mut ChaCha8Rng) -> orecode::Result<Outcome> {
    let ctx = ring.ctx();
    for _ in 0..n {
        let f = random_laurent(ring, 2, 4, rng);
        let g = random_laurent(ring, 2, 4, rng);
        let h = random_laurent(ring, 2, 3, rng);
        invariant(&(&f * &g) * &h == &f * &(&g * &h), || format!("associativity fails for {f:?}, {g:?}, {h:?}"))?;
        invariant(&f * &(&g + &h) == &(&f * &g) + &(&f * &h), || "left distributivity fails".into())?;
        invariant(&(&f + &g) * &h == &(&f * &h) + &(&g * &h), || "right distributivity fails".into())?;
        let a = random_nonzero(ctx.l(), rng);
        let i = rng.gen_range(0..ring.m());
        let lhs = &OrePoly::var(ring, i) * &OrePoly::constant(ring, a);
        let rhs = OrePoly::monomial(ring, ctx.frobenius(a, ring.twist().e()[i]), ExpVec::unit(ring.m(), i));
        invariant(lhs == rhs, || format!("commutation rule fails for X_{}", i + 1))?;
    }
    Ok(Outcome::passed(n, "associativity, distributivity, commutation"))
}

fn nrd_suite(ring: &Arc<OreRing>, n: usize, d: u32, rng: &mut ChaCha8Rng) -> orecode::Result<Outcome> {
    let ctx = ring.ctx();
    for _ in 0..n {
        let f = random_laurent(ring, 2, 4, rng);
        invariant(nrd_c1(&f)? == nrd_c2(&f)?, || format!("N₁ ≠ N₂ for {f:?}"))?;
        let g = random_poly(ring, d, 4, rng);
        check_degree_bound(&g, &nrd(&g)?)?;
    }
    let extra = n.div_ceil(4);
    for _ in 0..extra {
        let f = random_laurent(ring, 2, 3, rng);
        let g = random_laurent(ring, 2, 3, rng);
        invariant(nrd(&(&f * &g))? == nrd(&f)?.mul(&nrd(&g)?, ctx), || "Nrd is not multiplicative".into())?;
    }
    let adapted = ring.adapted()?.vectors().to_vec();
    let r = ring.r() as i64;
    for _ in 0..extra {
        let f = OrePoly::from_terms(
            ring,
            (0..3).map(|_| {
                let mut u = ExpVec::zero(ring.m());
                for (i, v) in adapted.iter().enumerate() {
                    let k = rng.gen_range(-2i64..3) * if i + 1 == adapted.len() { r } else { 1 };
                    u = u.add(&v.scale(k));
                }
                (u, ctx.embed(random_nonzero(ctx.fq(), rng)))
            }),
        );
        invariant(nrd(&f)? == central_power(&f)?, || "Nrd(f) ≠ f^r for a central f".into())?;
    }
    Ok(Outcome::passed(n + 2 * extra, "N₁ = N₂, degree bound, multiplicativity, central powers"))
}

fn cocycle_suite(ring: &Arc<OreRing>, points: &[EvalPoint], n: usize, rng: &mut ChaCha8Rng) -> orecode::Result<Outcome> {
    let ctx = ring.ctx();
    let m = ring.m();
    let exp = |rng: &mut ChaCha8Rng| ExpVec((0..m).map(|_| rng.gen_range(-9i64..10)).collect());
    for _ in 0..n {
        let c = points[rng.gen_range(0..points.len())].cocycle();
        let (u, w) = (exp(rng), exp(rng));
        let lhs = c.value(&u.add(&w), ctx);
        let rhs = ctx.l().mul(c.value(&u, ctx), ctx.frobenius(c.value(&w, ctx), ring.twist().pairing(&u)));
        invariant(lhs == rhs, || format!("cocycle identity fails at {:?}, {:?}", u.0, w.0))?;
    }
    for pt in points {
        invariant(pt.cocycle().value(&ExpVec::zero(m), ctx) == orecode::field::Elem::ONE, || "γ̃(0) ≠ 1".into())?;
    }
    let products = n.div_ceil(5);
    for _ in 0..products {
        let pt = &points[rng.gen_range(0..points.len())];
        let f = random_laurent(ring, 3, 4, rng);
        let g = random_laurent(ring, 3, 4, rng);
        let lhs = evaluate(&(&f * &g), pt)?;
        let rhs = evaluate(&f, pt)?.mul(&evaluate(&g, pt)?, ctx.fq());
        invariant(lhs == rhs, || "evaluation is not multiplicative".into())?;
    }
    Ok(Outcome::passed(n + products, "cocycle identity, normalization, multiplicativity"))
}

fn dimker_suite(ring: &Arc<OreRing>, points: &[EvalPoint], n: usize, d: u32, rng: &mut ChaCha8Rng) -> orecode::Result<Outcome> {
    for _ in 0..n {
        let f = random_poly(ring, d, 3, rng);
        check_dimker(&f, &points[rng.gen_range(0..points.len())])?;
    }
    Ok(Outcome::passed(n, "dim ker ≤ ord_γ(Nrd f)"))
}

fn zerosum_suite(ring: &Arc<OreRing>, points: &[EvalPoint], n: usize, d: u32, rng: &mut ChaCha8Rng) -> orecode::Result<Outcome> {
    let mut done = 0;
    let mut worst = 0u64;
    while done < n {
        let f = random_poly(ring, rng.gen_range(1..=d), 4, rng);
        if f.is_zero() {
            continue;
        }
        worst = worst.max(zero_sum(&f, points)?);
        done += 1;
    }
    Ok(Outcome::passed(n, format!("largest zero sum {worst}")))
}

fn distance_suite(cfg: &RunConfig, n: usize, seed: u64) -> CliResult<Outcome> {
    let code = cfg.code()?;
    let rep = if cfg.exhaustive {
        code.min_distance_exhaustive(cfg.budget.unwrap_or(DEFAULT_BUDGET))?
    } else {
        code.min_distance_sampled(n, seed)
    };
    let how = if rep.exhaustive { "exhaustive" } else { "sampled" };
    let designed = rep.designed.map(|d| d.to_string()).unwrap_or_else(|| "none".into());
    Ok(Outcome {
        checks: rep.codewords as usize,
        measured_d: Some(rep.measured),
        pass: rep.passes(),
        detail: format!("{how} minimum {} against designed {designed}", rep.measured),
    })
}

fn embedding_suite(cfg: &RunConfig, n: usize, seed: u64) -> CliResult<Outcome> {
    if !matches!(cfg.spec, DegreeSpec::Simplex { experimental: false, .. }) {
        return Err(CliError::Usage("the embedding suite needs --spec simplex:d on a lattice basis".into()));
    }
    let code = cfg.code()?;
    let big_n = cfg.n.unwrap_or_else(|| choose_n(cfg.m, cfg.r));
    let lag = LagContext::new(&code, big_n)?;
    let rep = embed_check(&code, &lag, n, seed)?;
    let polynomial = rep.weights.iter().filter(|w| w.polynomial).count();
    Ok(Outcome {
        checks: n,
        measured_d: rep.weights.iter().map(|w| w.lrm_weight as u64).min(),
        pass: rep.pass,
        detail: format!("n = {big_n}, μ = {:?}, {polynomial}/{n} images in the polynomial space", rep.mu),
    })
}

/// Runs one suite. Each suite draws from its own stream of the seed, so the
/// outcome does not depend on which other suites run.
pub fn run(suite: Suite, cfg: &RunConfig, seed: u64) -> CliResult<SuiteResult> {
    let start = Instant::now();
    let n = cfg.samples.unwrap_or_else(|| default_samples(suite));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite as u64);
    let outcome: CliResult<Outcome> = match suite {
        Suite::Embedding => embedding_suite(cfg, n, seed),
        Suite::Distance => distance_suite(cfg, n, seed),
        _ => {
            let ring = cfg.ring()?;
            let points = character_points(&ring)?;
            let d = degree(cfg);
            match suite {
                Suite::Ring => ring_suite(&ring, n, &mut rng),
                Suite::Nrd => nrd_suite(&ring, n, d, &mut rng),
                Suite::Cocycle => cocycle_suite(&ring, &points, n, &mut rng),
                Suite::Dimker => dimker_suite(&ring, &points, n, d, &mut rng),
                Suite::Zerosum => zerosum_suite(&ring, &points, n, d, &mut rng),
                Suite::Distance | Suite::Embedding => unreachable!(),
            }
            .map_err(CliError::from)
        }
    };
    let runtime_ms = start.elapsed().as_millis();
    let row = |status, checks, measured_d, detail| SuiteResult {
        suite: suite.name().into(),
        status,
        checks,
        measured_d,
        detail,
        runtime_ms,
    };
    match outcome {
        Ok(o) => Ok(row(if o.pass { Status::Pass } else { Status::Fail }, o.checks, o.measured_d, o.detail)),
        Err(CliError::Math(msg)) => Ok(row(Status::Fail, 0, None, msg)),
        Err(CliError::Budget(msg)) => Ok(row(Status::Budget, 0, None, msg)),
        Err(e) => Err(e),
    }
}
