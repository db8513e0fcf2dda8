//! Validated run configuration and its hash.

use std::sync::Arc;

use orecode::code::{DegreeSpec, LrmCode};
use orecode::field::FieldCtx;
use orecode::lattice::{LatticeBasis, TwistVector};
use orecode::ore::OreRing;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::args::CodeArgs;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub p: u32,
    pub a: u32,
    pub r: u32,
    pub m: usize,
    pub e: Vec<i64>,
    pub spec: DegreeSpec,
    pub seed: Option<u64>,
    pub budget: Option<u128>,
    pub samples: Option<usize>,
    pub n: Option<u32>,
    pub suites: Vec<String>,
    pub exhaustive: bool,
}

impl RunConfig {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.a)
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&json))
    }

    pub fn twist(&self) -> CliResult<TwistVector> {
        Ok(TwistVector::new(self.e.clone(), self.r)?)
    }

    pub fn ring(&self) -> CliResult<Arc<OreRing>> {
        let ctx = Arc::new(FieldCtx::new(self.p, self.a, self.r)?);
        Ok(OreRing::new(ctx, self.twist()?)?)
    }

    pub fn code(&self) -> CliResult<LrmCode> {
        let ring = self.ring()?;
        let code = LrmCode::build(&ring, self.spec.clone(), orecode::code::AlphaChoice::Canonical)?;
        Ok(match self.seed {
            Some(s) => code.with_seed(s),
            None => code,
        })
    }

    pub fn require_seed(&self) -> CliResult<u64> {
        self.seed.ok_or_else(|| CliError::Usage(format!("`{}` is randomized and needs --seed", self.command)))
    }
}

fn smallest_prime_factor(q: u32) -> u32 {
    (2..).take_while(|d| d * d <= q).find(|&d| q.is_multiple_of(d)).unwrap_or(q)
}

fn is_prime(p: u32) -> bool {
    p >= 2 && smallest_prime_factor(p) == p
}

fn field_size(args: &CodeArgs) -> CliResult<(u32, u32)> {
    let (p, a) = match (args.q, args.p) {
        (Some(q), _) => {
            if q < 2 {
                return Err(CliError::Usage(format!("--q {q} is not a prime power")));
            }
            let p = smallest_prime_factor(q);
            let mut a = 0;
            let mut rest = q;
            while rest.is_multiple_of(p) {
                rest /= p;
                a += 1;
            }
            if rest != 1 {
                return Err(CliError::Usage(format!("--q {q} is not a prime power")));
            }
            if args.p.is_some_and(|x| x != p) || args.a.is_some_and(|x| x != a) {
                return Err(CliError::Usage(format!("--q {q} disagrees with --p/--a")));
            }
            (p, a)
        }
        (None, Some(p)) => (p, args.a.unwrap_or(1)),
        (None, None) => return Err(CliError::Usage("give the field as --p [--a] or --q".into())),
    };
    if !is_prime(p) || a == 0 {
        return Err(CliError::Usage(format!("p = {p}, a = {a} do not define a finite field")));
    }
    Ok((p, a))
}

fn parse_basis(s: &str) -> CliResult<Vec<Vec<i64>>> {
    s.split(';')
        .map(|w| {
            w.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad basis entry `{x}` in `{s}`"))))
                .collect()
        })
        .collect()
}

fn parse_spec(args: &CodeArgs, twist: &TwistVector, q: u64) -> CliResult<DegreeSpec> {
    let default_d = q.saturating_sub(2).min(1);
    let raw = args.spec.clone().unwrap_or_else(|| format!("total:{default_d}"));
    let (kind, d) = raw.split_once(':').ok_or_else(|| CliError::Usage(format!("--spec `{raw}` is not kind:d")))?;
    let d: u32 = d.parse().map_err(|_| CliError::Usage(format!("--spec `{raw}` has a bad degree")))?;
    if kind != "simplex" && args.basis.is_some() {
        return Err(CliError::Usage("--basis only applies to simplex specs".into()));
    }
    match kind {
        "total" => Ok(DegreeSpec::Total { d }),
        "ac" => Ok(DegreeSpec::ExtendedAc { d }),
        "simplex" => {
            let basis = match &args.basis {
                Some(b) => parse_basis(b)?,
                None => LatticeBasis::hermite(twist)?.rows(),
            };
            if basis.iter().any(|w| w.len() != twist.m()) {
                return Err(CliError::Usage(format!("--basis vectors must have {} entries", twist.m())));
            }
            Ok(DegreeSpec::Simplex { d, basis, experimental: args.experimental })
        }
        other => Err(CliError::Usage(format!("unknown spec kind `{other}`; expected total, simplex or ac"))),
    }
}

/// Resolves the shared code arguments; everything else starts unset.
pub fn resolve(command: &str, args: &CodeArgs) -> CliResult<RunConfig> {
    let (p, a) = field_size(args)?;
    if args.r == 0 {
        return Err(CliError::Usage("--r must be positive".into()));
    }
    let e = match (&args.e, args.m) {
        (Some(e), Some(m)) if e.len() != m => {
            return Err(CliError::Usage(format!("--e has {} entries but --m is {m}", e.len())));
        }
        (Some(e), _) => e.clone(),
        (None, Some(m)) if m > 0 => {
            let mut e = vec![0; m];
            e[m - 1] = 1;
            e
        }
        _ => return Err(CliError::Usage("give the twist with --e (or the number of variables with --m)".into())),
    };
    if e.is_empty() {
        return Err(CliError::Usage("--e must be nonempty".into()));
    }
    let twist = TwistVector::new(e.clone(), args.r)?;
    let q = (p as u64).pow(a);
    let spec = parse_spec(args, &twist, q)?;
    orecode::code::params(q, &twist, &spec)?;
    Ok(RunConfig {
        command: command.into(),
        p,
        a,
        r: args.r,
        m: e.len(),
        e,
        spec,
        seed: None,
        budget: None,
        samples: None,
        n: None,
        suites: Vec::new(),
        exhaustive: false,
    })
}
