use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use facewise::chain::{ProductSimplex, Tensor};
use facewise::ez::{ez_contraction, naive_higher_diagonal, HomotopySign};
use facewise::fixtures;
use facewise::homology::{operation_matrix, HomologyContraction};
use facewise::simplex::{Simplex, SimplicialComplex};
use facewise::simplifier::FormulaCache;
use facewise::steenrod::{HigherDiagonal, OperationKind, OperationRequest};
use facewise::{Error, Prime};

use crate::config::{Command, RunConfig};
use crate::report::{
    ChainTerm, Check, FormulaReport, HomologyReport, Instantiation, OperationReport, Report,
    SelfcheckReport, TensorTerm,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse(_)
            | Error::NotStrictlyIncreasing(_)
            | Error::NotWeaklyIncreasing(_)
            | Error::EmptySimplex
            | Error::DuplicateSimplex(_)
            | Error::MalformedSymbol(_) => CliError::Parse(msg),
            Error::Invariant(_) => CliError::Invariant(msg),
            _ => CliError::Invalid(msg),
        }
    }
}

/// A bundled complex by name, or a JSON file.
pub fn load_complex(source: &str) -> Result<SimplicialComplex, CliError> {
    let path = Path::new(source);
    if path.exists() {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{source}: {e}")))?;
        return Ok(SimplicialComplex::from_json(&text)?);
    }
    fixtures::by_name(source).ok_or_else(|| {
        CliError::Parse(format!(
            "{source}: no such file or bundled complex ({})",
            fixtures::names().collect::<Vec<_>>().join(", ")
        ))
    })
}

fn prime(p: u32) -> Result<Prime, CliError> {
    Prime::new(p).map_err(|e| CliError::Invalid(e.to_string()))
}

fn operation(complex: &str, req: OperationRequest) -> Result<Report, CliError> {
    req.validate()?;
    let k = load_complex(complex)?;
    let hc = HomologyContraction::compute(&k, req.prime);
    let matrix = operation_matrix(&req, &hc, &FormulaCache::new())?;
    Ok(Report::Operation(OperationReport {
        complex: k.name().to_string(),
        matrix,
    }))
}

fn symmetric(c: u32, p: Prime) -> i64 {
    let (c, p) = (i64::from(c), i64::from(p.get()));
    if 2 * c > p {
        c - p
    } else {
        c
    }
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    match &config.command {
        Command::Homology { complex, prime: p } => {
            let p = prime(*p)?;
            let k = load_complex(&complex.complex)?;
            let hc = HomologyContraction::compute(&k, p);
            let generators = (0..hc.ranks().len())
                .map(|q| {
                    hc.homology_basis(q)
                        .iter()
                        .map(|z| {
                            z.iter()
                                .map(|(s, c)| ChainTerm {
                                    simplex: s.clone(),
                                    coefficient: c,
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            Ok(Report::Homology(HomologyReport {
                complex: k.name().to_string(),
                prime: p.get(),
                ranks: hc.ranks(),
                generators,
            }))
        }
        Command::Square { complex, i, q } => operation(
            &complex.complex,
            OperationRequest {
                prime: Prime::TWO,
                kind: OperationKind::Square { i: *i },
                degree: *q,
            },
        ),
        Command::Power {
            complex,
            prime: p,
            k,
            q,
        } => operation(
            &complex.complex,
            OperationRequest {
                prime: prime(*p)?,
                kind: OperationKind::Power { k: *k },
                degree: *q,
            },
        ),
        Command::Formula {
            n,
            r,
            dim,
            prime: p,
        } => {
            if *n < 2 {
                return Err(CliError::Invalid(format!(
                    "n = {n}: need at least two factors"
                )));
            }
            let formula = facewise::simplifier::generate_dnr(*n, *r)?;
            let instantiation = match dim {
                None => None,
                Some(m) => {
                    let p = prime(*p)?;
                    let x = Simplex::new((0..=*m as u32).collect())?;
                    let value = formula.evaluate(&x, p);
                    let terms = value
                        .iter()
                        .map(|(t, c): (&Tensor, u32)| TensorTerm {
                            coefficient: symmetric(c, p),
                            factors: t.factors().to_vec(),
                        })
                        .collect();
                    Some(Instantiation {
                        dim: *m,
                        prime: p.get(),
                        summands: formula.count_summands(*m) as u64,
                        face_operators: formula.count_face_operators(*m) as u64,
                        terms,
                    })
                }
            };
            Ok(Report::Formula(FormulaReport {
                formula,
                instantiation,
            }))
        }
        Command::Selfcheck => {
            let report = selfcheck();
            match report.first_failure() {
                Some(c) => Err(CliError::Invariant(format!("{}: {}", c.name, c.detail))),
                None => Ok(Report::Selfcheck(report)),
            }
        }
    }
}

fn check(name: &str, failures: Vec<String>, total: usize) -> Check {
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: match failures.first() {
            None => format!("{total} cases"),
            Some(f) => format!("{} of {total} failed, first: {f}", failures.len()),
        },
    }
}

/// All `m`-simplices of the simplicial set of `k`, degenerate ones included.
fn simplices_with_degeneracies(k: &SimplicialComplex, m: usize) -> Vec<Simplex> {
    let verts: Vec<u32> = k.simplices(0).iter().map(|v| v.vertices()[0]).collect();
    let mut seqs: Vec<Vec<usize>> = (0..verts.len()).map(|v| vec![v]).collect();
    for _ in 0..m {
        seqs = seqs
            .into_iter()
            .flat_map(|s| {
                let last = *s.last().unwrap();
                (last..verts.len()).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    seqs.into_iter()
        .filter_map(|s| {
            let mut s: Vec<u32> = s.into_iter().map(|i| verts[i]).collect();
            let x = Simplex::new(s.clone()).ok()?;
            s.dedup();
            k.simplices(s.len() - 1)
                .iter()
                .any(|y| y.vertices() == s)
                .then_some(x)
        })
        .collect()
}

/// Quick versions of the library invariants.
pub fn selfcheck() -> SelfcheckReport {
    let cache = FormulaCache::new();
    let mut checks = Vec::new();

    let mut fails = Vec::new();
    let mut total = 0;
    for name in fixtures::names() {
        for p in [Prime::TWO, Prime::THREE] {
            let hc = Arc::new(HomologyContraction::compute(
                &fixtures::by_name(name).unwrap(),
                p,
            ));
            let r = hc.check_axioms();
            total += 1;
            if !r.holds() {
                fails.push(format!("{name} Z_{p}: {:?}", r.first_failure));
            }
        }
    }
    checks.push(check("homology contraction axioms", fails, total));

    let circle = fixtures::circle();
    let mut large = Vec::new();
    for m in 0..=2 {
        let xs = simplices_with_degeneracies(&circle, m);
        for x in &xs {
            for y in &xs {
                if let Ok(t) = ProductSimplex::new(vec![x.clone(), y.clone()]) {
                    if !facewise::chain::Basis::is_degenerate(&t) {
                        large.push(t);
                    }
                }
            }
        }
    }
    let small: Vec<Tensor> = (0..=1)
        .flat_map(|a| {
            let circle = &circle;
            (0..=1).flat_map(move |b| {
                circle.simplices(a).iter().flat_map(move |x| {
                    circle
                        .simplices(b)
                        .iter()
                        .map(move |y| Tensor(vec![x.clone(), y.clone()]))
                })
            })
        })
        .collect();
    let mut fails = Vec::new();
    for p in [Prime::TWO, Prime::THREE] {
        let r = ez_contraction(p, HomotopySign::Negated).check_axioms(&large, &small);
        if !r.holds() {
            fails.push(format!("Z_{p}: {:?}", r.first_failure));
        }
    }
    checks.push(check("Eilenberg-Zilber contraction axioms", fails, 2));

    let sphere3 = fixtures::sphere3();
    let xs: Vec<Simplex> = (0..=3)
        .flat_map(|q| sphere3.simplices(q).to_vec())
        .collect();
    let pairs = [(2, 0), (2, 1), (2, 2), (3, 1)];
    let mut fails = Vec::new();
    let mut total = 0;
    for (n, r) in pairs {
        let f = cache.get(n, r).expect("formula");
        for x in &xs {
            total += 1;
            if f.evaluate(x, Prime::THREE)
                != naive_higher_diagonal(n, r, x, Prime::THREE).expect("oracle")
            {
                fails.push(format!("D^{n}_{r} at {x}"));
            }
        }
    }
    checks.push(check(
        "generated diagonals agree with naive composition",
        fails,
        total,
    ));

    let mut fails = Vec::new();
    let mut total = 0;
    for (n, r) in pairs {
        let hd = HigherDiagonal::new(n, r, &cache).expect("formula");
        for x in &xs {
            total += 1;
            if !hd.recurrence_holds(x, Prime::THREE) {
                fails.push(format!("D^{n}_{r} at {x}"));
            }
        }
    }
    checks.push(check("higher diagonal recurrence", fails, total));

    let mut fails = Vec::new();
    let sq = |i, q| OperationRequest {
        prime: Prime::TWO,
        kind: OperationKind::Square { i },
        degree: q,
    };
    let rp2 = HomologyContraction::compute(&fixtures::rp2(), Prime::TWO);
    let torus = HomologyContraction::compute(&fixtures::torus(), Prime::TWO);
    let cases = [
        (
            "Sq^0 on H^1(RP^2)",
            operation_matrix(&sq(0, 1), &rp2, &cache).map(|m| m.is_identity()),
        ),
        (
            "Sq^1 on H^1(RP^2) nonzero",
            operation_matrix(&sq(1, 1), &rp2, &cache).map(|m| !m.is_zero()),
        ),
        (
            "Sq^1 on H^1(torus) zero",
            operation_matrix(&sq(1, 1), &torus, &cache).map(|m| m.is_zero()),
        ),
    ];
    let total = cases.len();
    for (name, ok) in cases {
        if ok != Ok(true) {
            fails.push(name.to_string());
        }
    }
    checks.push(check("Steenrod squares", fails, total));

    SelfcheckReport { checks }
}
