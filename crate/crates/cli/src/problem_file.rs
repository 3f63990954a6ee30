//! The problem definition file: a TOML document describing the rank, the
//! degree, the problem kind and its constraint data. Parsing failures carry
//! the line and column from the TOML parser; semantic failures name the
//! offending end.

use serde::Deserialize;

use tropcount_core::evaluation::{ConstraintSpec, GeneralProblem};
use tropcount_core::lattice::{Covector, LatticeVector, TwoForm};
use tropcount_core::moduli::Degree;
use tropcount_core::{Error, Int};

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub rank: usize,
    pub kind: String,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub omega: Option<Vec<Vec<i64>>>,
    /// Second 2-form for the continuity check (the coarser cone).
    pub omega_coarse: Option<Vec<Vec<i64>>>,
    pub e0: Option<String>,
    pub delta: Option<Vec<i64>>,
    #[serde(rename = "end")]
    pub ends: Vec<EndSpec>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct EndSpec {
    pub label: Option<String>,
    pub slope: Vec<i64>,
    /// Linear forms whose common kernel (with the slope) is the constraint.
    pub covectors: Option<Vec<Vec<i64>>>,
    /// Alternative: generators of the constraint slope, converted through
    /// the orthogonal dual.
    pub generators: Option<Vec<Vec<i64>>>,
    /// Point constraint shorthand.
    pub point: Option<bool>,
    /// Linear form of a marked point (moment problems and sign data).
    pub phi: Option<Vec<i64>>,
}

/// A parsed and validated problem, ready for the solver.
#[derive(Debug)]
pub struct Loaded {
    pub degree: Degree,
    pub kind: LoadedKind,
    pub omega: TwoForm,
    pub omega_coarse: Option<TwoForm>,
    pub e0: usize,
    pub delta: Option<LatticeVector>,
    pub phi: Vec<(usize, Covector)>,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Debug)]
pub enum LoadedKind {
    Omega,
    General(GeneralProblem),
}

fn to_two_form(rank: usize, rows: &[Vec<i64>]) -> Result<TwoForm, Error> {
    let converted: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Int::from(x)).collect())
        .collect();
    TwoForm::new(rank, converted)
}

pub fn parse(text: &str) -> Result<Loaded, String> {
    let file: ProblemFile = toml::from_str(text).map_err(|e| e.to_string())?;
    load(file).map_err(|e| e.to_string())
}

fn load(file: ProblemFile) -> Result<Loaded, Error> {
    let rank = file.rank;
    let labels: Vec<String> = file
        .ends
        .iter()
        .enumerate()
        .map(|(i, e)| e.label.clone().unwrap_or_else(|| format!("e{}", i + 1)))
        .collect();
    let slopes: Vec<LatticeVector> = file
        .ends
        .iter()
        .map(|e| {
            if e.slope.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: e.slope.len(),
                });
            }
            Ok(LatticeVector::from_i64(&e.slope))
        })
        .collect::<Result<_, _>>()?;
    let degree = Degree::new(labels, slopes)?;

    let omega = match &file.omega {
        Some(rows) => to_two_form(rank, rows)?,
        None => {
            return Err(Error::InvalidProblem(
                "an `omega` matrix is required (it fixes vertex signs and K)".into(),
            ))
        }
    };
    let omega_coarse = file
        .omega_coarse
        .as_ref()
        .map(|rows| to_two_form(rank, rows))
        .transpose()?;

    let e0 = match &file.e0 {
        Some(label) => degree
            .leaf_by_label(label)
            .ok_or_else(|| Error::InvalidProblem(format!("unknown e0 label `{label}`")))?,
        None => (0..degree.len())
            .find(|&l| !degree.is_marked(l))
            .expect("a degree has a nonzero entry"),
    };
    let delta = file
        .delta
        .as_ref()
        .map(|d| {
            if d.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: d.len(),
                });
            }
            Ok(LatticeVector::from_i64(d))
        })
        .transpose()?;

    let mut phi = Vec::new();
    for (leaf, end) in file.ends.iter().enumerate() {
        if let Some(p) = &end.phi {
            if p.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    got: p.len(),
                });
            }
            phi.push((leaf, Covector::from_i64(p)));
        }
    }

    let kind = match file.kind.as_str() {
        "omega" => {
            for (leaf, end) in file.ends.iter().enumerate() {
                if end.covectors.is_some() || end.generators.is_some() || end.point.is_some() {
                    return Err(Error::InvalidProblem(format!(
                        "end {} carries affine constraints in a moment problem",
                        degree.label(leaf)
                    )));
                }
            }
            LoadedKind::Omega
        }
        "general" => {
            let specs: Vec<ConstraintSpec> = file
                .ends
                .iter()
                .map(|end| {
                    if end.point == Some(true) {
                        ConstraintSpec::Point
                    } else if let Some(ms) = &end.covectors {
                        ConstraintSpec::Covectors(
                            ms.iter().map(|m| Covector::from_i64(m)).collect(),
                        )
                    } else if let Some(gs) = &end.generators {
                        ConstraintSpec::Generators(
                            gs.iter().map(|g| LatticeVector::from_i64(g)).collect(),
                        )
                    } else {
                        ConstraintSpec::Free
                    }
                })
                .collect();
            LoadedKind::General(GeneralProblem::with_phi(degree.clone(), specs, phi.clone())?)
        }
        other => {
            return Err(Error::InvalidProblem(format!(
                "unknown kind `{other}` (expected \"omega\" or \"general\")"
            )))
        }
    };

    Ok(Loaded {
        degree,
        kind,
        omega,
        omega_coarse,
        e0,
        delta,
        phi,
        seed: file.seed.unwrap_or(0),
        trials: file.trials.unwrap_or(20),
    })
}
