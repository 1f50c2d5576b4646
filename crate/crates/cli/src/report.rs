use std::fmt;

use serde::{Deserialize, Serialize};

use facewise::homology::OperationMatrix;
use facewise::simplex::Simplex;
use facewise::simplifier::IntervalFormula;
use facewise::steenrod::OperationKind;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTerm {
    pub simplex: Simplex,
    pub coefficient: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub complex: String,
    pub prime: u32,
    pub ranks: Vec<usize>,
    /// Representative cycles, per degree.
    pub generators: Vec<Vec<Vec<ChainTerm>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationReport {
    pub complex: String,
    pub matrix: OperationMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    /// Symmetric residue of the coefficient.
    pub coefficient: i64,
    pub factors: Vec<Simplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instantiation {
    pub dim: usize,
    pub prime: u32,
    pub summands: u64,
    pub face_operators: u64,
    pub terms: Vec<TensorTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaReport {
    pub formula: IntervalFormula,
    pub instantiation: Option<Instantiation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfcheckReport {
    pub checks: Vec<Check>,
}

impl SelfcheckReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Homology(HomologyReport),
    Operation(OperationReport),
    Formula(FormulaReport),
    Selfcheck(SelfcheckReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Homology(h) => {
                writeln!(f, "homology of {} over Z_{}", h.complex, h.prime)?;
                for (q, r) in h.ranks.iter().enumerate() {
                    writeln!(f, "H_{q}: rank {r}")?;
                    for (j, z) in h.generators[q].iter().enumerate() {
                        let parts: Vec<String> = z
                            .iter()
                            .map(|t| format!("{}·{}", t.coefficient, t.simplex))
                            .collect();
                        writeln!(f, "  γ{q}_{j} = {}", parts.join(" + "))?;
                    }
                }
                Ok(())
            }
            Report::Operation(o) => {
                let m = &o.matrix;
                let name = match m.request.kind {
                    OperationKind::Square { i } => format!("Sq^{i}"),
                    OperationKind::Power { k } => format!("P^{k}"),
                };
                writeln!(
                    f,
                    "{name}: H^{} -> H^{} of {} over Z_{} ({}x{})",
                    m.source_degree,
                    m.target_degree,
                    o.complex,
                    m.request.prime,
                    m.rows(),
                    m.cols()
                )?;
                for row in &m.entries {
                    let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                    writeln!(f, "[{}]", cells.join(" "))?;
                }
                Ok(())
            }
            Report::Formula(r) => {
                write!(f, "{}", r.formula)?;
                if let Some(inst) = &r.instantiation {
                    writeln!(
                        f,
                        "# m={} p={} summands={} face_operators={} nonzero_terms={}",
                        inst.dim,
                        inst.prime,
                        inst.summands,
                        inst.face_operators,
                        inst.terms.len()
                    )?;
                    for t in &inst.terms {
                        let parts: Vec<String> = t.factors.iter().map(Simplex::to_string).collect();
                        writeln!(f, "{:+} {}", t.coefficient, parts.join(" ⊗ "))?;
                    }
                }
                Ok(())
            }
            Report::Selfcheck(s) => {
                for c in &s.checks {
                    writeln!(
                        f,
                        "{} {}: {}",
                        if c.passed { "ok  " } else { "FAIL" },
                        c.name,
                        c.detail
                    )?;
                }
                Ok(())
            }
        }
    }
}
