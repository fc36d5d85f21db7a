//! Competing irrationality provers for `√C`, and the Theodorus table that
//! runs them side by side.
//!
//! Every prover works on a hypothetical coprime solution of `m² = C·n²`:
//!
//! * [`parity_proof`]: the even/odd argument, reaching `C = 2k²`.
//! * [`residue_prover`]: removes factors of 4, then rules out each parity
//!   pattern of `(m, n)` by comparing squares mod 4 or mod 8. It cannot
//!   separate `m² ≡ n² (mod 8)` when both are odd, so every `C ≡ 1 (mod 8)`
//!   (first instance 17) is inconclusive.
//! * [`modern_oracle`]: ground truth, `C` is not a perfect square.
//! * The anthyphairetic route ([`crate::engine`]) proves every non-square.

use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::certificates::{
    check, parity_case_residues, Certificate, CongruenceStep, FormatVersion, ResidueClass, Unknown,
    COPRIME_PARITIES, RESIDUE_MODULI,
};
use crate::engine::{anthyphairesis, sqrt_trace, verdict, AnthTrace, Verdict};
use crate::exec::Exec;
use crate::surd::{exact_sqrt, is_perfect_square, make_sqrt, Magnitude};
use crate::{Error, Natural, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofOutcome {
    Proved {
        certificate: Certificate,
    },
    /// The method ran but could not reach a contradiction; `class` is the
    /// residue class that defeated it, after the recorded descent.
    Inconclusive {
        class: ResidueClass,
        descent_chain: Vec<Natural>,
    },
    NotApplicable {
        reason: String,
    },
}

impl ProofOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofOutcome::Proved { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, ProofOutcome::Inconclusive { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            ProofOutcome::Proved { certificate } => Some(certificate),
            _ => None,
        }
    }
}

impl fmt::Display for ProofOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofOutcome::Proved { certificate } => {
                write!(f, "Proved({})", certificate.kind().tag())
            }
            ProofOutcome::Inconclusive { class, .. } => write!(f, "Inconclusive(class {class})"),
            ProofOutcome::NotApplicable { .. } => f.write_str("NotApplicable"),
        }
    }
}

fn at_least_two(c: &Natural) -> Result<()> {
    if c < &Natural::from(2u32) {
        return Err(Error::domain(format!("C must be at least 2, got {c}")));
    }
    Ok(())
}

/// The even/odd argument. Applies to `C = 2k²`, where `√C = k·√2` and
/// `m² = 2n²` makes `m` even, then `n` even, against `gcd(m, n) = 1`.
pub fn parity_proof(c: &Natural) -> Result<ProofOutcome> {
    at_least_two(c)?;
    let two = Natural::from(2u32);
    let k = (c % &two)
        .is_zero()
        .then(|| exact_sqrt(&(c / &two)))
        .flatten();
    let Some(k) = k else {
        return Ok(ProofOutcome::NotApplicable {
            reason: format!("{c} is not of the form 2k^2"),
        });
    };
    let relation = vec![Natural::one(), two.clone()];
    let steps = vec![
        CongruenceStep::Reduction {
            c: c.clone(),
            factor: k.clone(),
            base: two.clone(),
        },
        CongruenceStep::ForcedEven {
            subject: Unknown::M,
            relation: relation.clone(),
        },
        CongruenceStep::ForcedEven {
            subject: Unknown::N,
            relation,
        },
        CongruenceStep::CoprimeContradiction { modulus: two },
    ];
    Ok(ProofOutcome::Proved {
        certificate: Certificate::Parity {
            version: FormatVersion,
            c: c.clone(),
            reduction_factor: k,
            steps,
        },
    })
}

/// Strips factors of 4: `m² = 4C'·n²` forces `m` even and leaves
/// `m'² = C'·n²`. Returns the chain `[C, C/4, …]`.
fn descent_chain(c: &Natural) -> Vec<Natural> {
    let mut chain = vec![c.clone()];
    loop {
        let last = chain.last().expect("chain starts nonempty");
        if last.is_zero() || !(last % 4u32).is_zero() {
            return chain;
        }
        let next = last / 4u32;
        chain.push(next);
    }
}

/// Squares-mod-8 case analysis after descent by 4.
pub fn residue_prover(c: &Natural) -> Result<ProofOutcome> {
    at_least_two(c)?;
    if is_perfect_square(c) {
        return Err(Error::domain(format!("{c} is a perfect square")));
    }
    let chain = descent_chain(c);
    let terminal = chain.last().expect("chain is nonempty").clone();
    let mut steps: Vec<CongruenceStep> = chain
        .windows(2)
        .map(|w| CongruenceStep::Descent {
            from: w[0].clone(),
            to: w[1].clone(),
        })
        .collect();
    for (m_parity, n_parity) in COPRIME_PARITIES {
        let refutation = RESIDUE_MODULI.iter().find_map(|&modulus| {
            let c_residue = (&terminal % modulus).to_u64().expect("residue fits");
            let (squares, rhs) = parity_case_residues(modulus, c_residue, m_parity, n_parity);
            squares
                .iter()
                .all(|s| !rhs.contains(s))
                .then(|| CongruenceStep::ParityCase {
                    modulus: modulus.into(),
                    c_residue: c_residue.into(),
                    m_parity,
                    n_parity,
                    m_square_residues: squares.into_iter().map(Natural::from).collect(),
                    rhs_residues: rhs.into_iter().map(Natural::from).collect(),
                })
        });
        match refutation {
            Some(step) => steps.push(step),
            None => {
                return Ok(ProofOutcome::Inconclusive {
                    class: ResidueClass::of(&terminal),
                    descent_chain: chain,
                })
            }
        }
    }
    Ok(ProofOutcome::Proved {
        certificate: Certificate::ResidueDescent {
            version: FormatVersion,
            c: c.clone(),
            class_label: ResidueClass::of(c),
            descent_chain: chain,
            steps,
        },
    })
}

/// Ground truth: `√C` is irrational exactly when `C` is not a perfect square.
pub fn modern_oracle(c: &Natural) -> bool {
    !is_perfect_square(c)
}

/// The side `√C` expands infinitely (periodically) against the unit, while
/// its square `C` expands finitely as the single quotient `[C]`.
pub fn theaetetus_squaring(c: &Natural) -> Result<(AnthTrace, AnthTrace)> {
    at_least_two(c)?;
    let side = make_sqrt(c)?;
    if side.is_rational() {
        return Err(Error::domain(format!("{c} is a perfect square")));
    }
    let unit = Magnitude::integer(1)?;
    let e = side.to_field_element();
    let square = Magnitude::from_field_element(&e.checked_mul(&e)?)?;
    Ok((
        anthyphairesis(&side, &unit, None)?,
        anthyphairesis(&square, &unit, None)?,
    ))
}

/// Anthyphairesis summary for a table row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnthSummary {
    pub trace: AnthTrace,
    pub verdict: Verdict,
    /// Periodicity certificate (non-square `C`) or finite chain (square `C`).
    pub certificate: Certificate,
    pub certificate_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub c: u64,
    pub is_square: bool,
    pub anth: AnthSummary,
    pub parity: ProofOutcome,
    pub residue: ProofOutcome,
    pub oracle: bool,
}

fn anth_summary(c: u64, trace: AnthTrace) -> Result<AnthSummary> {
    let cn = Natural::from(c);
    let certificate = if trace.is_finite() {
        let k =
            exact_sqrt(&cn).ok_or_else(|| Error::Internal(format!("√{c} expanded finitely")))?;
        Certificate::finite_anth(&k, &Natural::one())?
    } else {
        Certificate::periodic_anth(&cn, &trace)?
    };
    Ok(AnthSummary {
        verdict: verdict(&trace),
        certificate_checked: check(&certificate)?,
        certificate,
        trace,
    })
}

/// Runs every method on a single `C ≥ 2`. `max_steps` is passed to the
/// engine as its safety budget.
pub fn table_row(c: u64, max_steps: Option<u64>) -> Result<TableRow> {
    let cn = Natural::from(c);
    at_least_two(&cn)?;
    let is_square = is_perfect_square(&cn);
    let anth = anth_summary(c, sqrt_trace(c, max_steps)?)?;
    let (parity, residue) = if is_square {
        let skipped = || ProofOutcome::NotApplicable {
            reason: format!("{c} is a perfect square"),
        };
        (skipped(), skipped())
    } else {
        (parity_proof(&cn)?, residue_prover(&cn)?)
    };
    Ok(TableRow {
        c,
        is_square,
        anth,
        parity,
        residue,
        oracle: modern_oracle(&cn),
    })
}

/// One row per `C` in `from..=to`. The range is inclusive at both ends.
pub fn theodorus_table(from: u64, to: u64) -> Result<Vec<TableRow>> {
    theodorus_table_with(from, to, Exec::default(), None)
}

pub fn theodorus_table_with(
    from: u64,
    to: u64,
    exec: Exec,
    max_steps: Option<u64>,
) -> Result<Vec<TableRow>> {
    if from < 2 || from > to {
        return Err(Error::domain(format!(
            "table range must satisfy 2 <= from <= to (got {from}..={to})"
        )));
    }
    exec.map_range(from, to, |c| table_row(c, max_steps))
        .into_iter()
        .collect()
}
