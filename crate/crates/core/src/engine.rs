//! Full anthyphairesis of a pair of magnitudes.
//!
//! `Anth(a, b)` depends only on the ratio `a/b`, so the engine reduces the
//! pair to the single value `x = a/b` and expands that. Rational ratios run
//! until the remainder vanishes. Quadratic irrational ratios run the surd
//! state machine until a complete-quotient state repeats; the state space is
//! finite, so a repeat always comes, and the repeated state is a finite
//! witness that the expansion never ends.

use std::collections::HashMap;
use std::fmt;

use num_bigint::Sign;
use num_traits::{One, ToPrimitive, Zero};

use crate::euclid::reconstruct_from_quotients;
use crate::exec::Exec;
use crate::surd::{anth_step, make_sqrt, sign_of, Magnitude, QFieldElement, QuadraticSurd};
use crate::{Error, Natural, Rational, Result};

/// How an expansion ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Termination {
    /// The last remainder was zero: the ratio is rational.
    Finite,
    /// The state after `preperiod_len` steps recurs `period_len` steps later.
    EventuallyPeriodic {
        preperiod_len: usize,
        period_len: usize,
        witness_state: QuadraticSurd,
    },
}

/// Quotient sequence of an anthyphairesis together with how it ended.
///
/// For periodic expansions `quotients` holds the preperiod followed by one
/// full period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnthTrace {
    pub quotients: Vec<Natural>,
    pub termination: Termination,
    pub steps_executed: u64,
}

impl AnthTrace {
    pub fn is_finite(&self) -> bool {
        self.termination == Termination::Finite
    }

    pub fn preperiod(&self) -> &[Natural] {
        match &self.termination {
            Termination::Finite => &self.quotients,
            Termination::EventuallyPeriodic { preperiod_len, .. } => {
                &self.quotients[..*preperiod_len]
            }
        }
    }

    /// One full period, empty for finite traces.
    pub fn period(&self) -> &[Natural] {
        match &self.termination {
            Termination::Finite => &[],
            Termination::EventuallyPeriodic { preperiod_len, .. } => {
                &self.quotients[*preperiod_len..]
            }
        }
    }

    /// The first `k` quotients of the full (possibly infinite) expansion.
    /// Finite traces are truncated at their end.
    pub fn expanded(&self, k: usize) -> Vec<Natural> {
        match &self.termination {
            Termination::Finite => self.quotients.iter().take(k).cloned().collect(),
            Termination::EventuallyPeriodic { .. } => self
                .preperiod()
                .iter()
                .chain(self.period().iter().cycle())
                .take(k)
                .cloned()
                .collect(),
        }
    }
}

/// `[1; (1, 2)]` for periodic traces, `[3, 2, 2]` for finite ones.
impl fmt::Display for AnthTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |qs: &[Natural]| {
            qs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        match &self.termination {
            Termination::Finite => write!(f, "[{}]", join(&self.quotients)),
            Termination::EventuallyPeriodic { .. } if self.preperiod().is_empty() => {
                write!(f, "[({})]", join(self.period()))
            }
            Termination::EventuallyPeriodic { .. } => {
                write!(f, "[{}; ({})]", join(self.preperiod()), join(self.period()))
            }
        }
    }
}

/// Common measure `c` of a commensurable pair, given as `a = a_multiple·c`
/// and `b = b_multiple·c` with coprime multiples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonMeasure {
    pub a_multiple: Natural,
    pub b_multiple: Natural,
}

impl CommonMeasure {
    /// The measure itself, `b / b_multiple`, when `b` is rational.
    pub fn value_given(&self, b: &Magnitude) -> Option<Rational> {
        match b {
            Magnitude::Rational(r) => {
                Some(r / Rational::from_integer(self.b_multiple.clone().into()))
            }
            Magnitude::Surd(_) => None,
        }
    }
}

impl fmt::Display for CommonMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "b/{} (a = {}·c, b = {}·c)",
            self.b_multiple, self.a_multiple, self.b_multiple
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Commensurable {
        common_measure: CommonMeasure,
        quotients: Vec<Natural>,
    },
    /// Backed by a periodic-anthyphairesis certificate.
    Incommensurable,
}

impl Verdict {
    pub fn is_incommensurable(&self) -> bool {
        matches!(self, Verdict::Incommensurable)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Commensurable { .. } => f.write_str("Commensurable"),
            Verdict::Incommensurable => f.write_str("Incommensurable"),
        }
    }
}

/// The ratio `a/b` in one of the two exact shapes the engine expands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ratio {
    Rational(Rational),
    Surd(QuadraticSurd),
}

fn field_element(m: &Magnitude) -> Result<QFieldElement> {
    let e = m.to_field_element();
    if sign_of(&e) != Sign::Plus {
        return Err(Error::domain(format!(
            "magnitude must be positive, got {m}"
        )));
    }
    Ok(e)
}

/// Exact ratio `a/b`; rejects pairs whose ratio leaves every quadratic field.
pub fn ratio(a: &Magnitude, b: &Magnitude) -> Result<Ratio> {
    let (ea, eb) = (field_element(a)?, field_element(b)?);
    let x = ea.checked_div(&eb).map_err(|e| match e {
        Error::Domain(msg) => Error::domain(format!("incompatible magnitudes {a} and {b}: {msg}")),
        other => other,
    })?;
    Ok(match x.to_rational() {
        Some(r) => Ratio::Rational(r),
        None => Ratio::Surd(QuadraticSurd::from_field_element(&x)?),
    })
}

fn ratio_exceeding_one(a: &Magnitude, b: &Magnitude) -> Result<Ratio> {
    let x = ratio(a, b)?;
    let greater = match &x {
        Ratio::Rational(r) => r > &Rational::one(),
        // irrational, so x > 1 exactly when ⌊x⌋ ≥ 1
        Ratio::Surd(s) => s.floor() >= One::one(),
    };
    if !greater {
        return Err(Error::domain(format!(
            "anthyphairesis requires a > b (a = {a}, b = {b})"
        )));
    }
    Ok(x)
}

fn default_budget(x: &Ratio) -> u64 {
    match x {
        Ratio::Rational(r) => 8 * (r.numer().bits() + r.denom().bits()) + 16,
        Ratio::Surd(s) => s
            .d()
            .to_u64()
            .map_or(u64::MAX, |d| d.saturating_add(2).saturating_mul(10)),
    }
}

/// Unbounded stream of anthyphairetic quotients of a ratio.
#[derive(Debug, Clone)]
enum QuotientStream {
    Rational(Option<Rational>),
    Surd(QuadraticSurd),
}

impl QuotientStream {
    fn new(x: Ratio) -> Self {
        match x {
            Ratio::Rational(r) => QuotientStream::Rational(Some(r)),
            Ratio::Surd(s) => QuotientStream::Surd(s),
        }
    }
}

impl Iterator for QuotientStream {
    type Item = Result<Natural>;

    fn next(&mut self) -> Option<Result<Natural>> {
        match self {
            QuotientStream::Rational(state) => {
                let x = state.take()?;
                let i = x.floor();
                let frac = &x - &i;
                if !frac.is_zero() {
                    *state = Some(frac.recip());
                }
                let i = i
                    .to_integer()
                    .to_biguint()
                    .expect("quotients are nonnegative");
                Some(Ok(i))
            }
            QuotientStream::Surd(s) => match anth_step(s) {
                Ok((i, next)) => {
                    *s = next;
                    Some(Ok(i))
                }
                Err(e) => Some(Err(e)),
            },
        }
    }
}

/// Computes `Anth(a, b)` for `a > b > 0`.
///
/// `max_steps` is a safety valve; `None` uses `10·(D+2)` for surd ratios and
/// a bit-length bound for rational ones. Exhausting it is a [`Error::Budget`].
pub fn anthyphairesis(a: &Magnitude, b: &Magnitude, max_steps: Option<u64>) -> Result<AnthTrace> {
    let x = ratio_exceeding_one(a, b)?;
    let budget = max_steps.unwrap_or_else(|| default_budget(&x));
    match x {
        Ratio::Rational(_) => {
            let mut quotients = Vec::new();
            for q in QuotientStream::new(x) {
                if quotients.len() as u64 >= budget {
                    return Err(Error::Budget { max_steps: budget });
                }
                quotients.push(q?);
            }
            let steps_executed = quotients.len() as u64;
            Ok(AnthTrace {
                quotients,
                termination: Termination::Finite,
                steps_executed,
            })
        }
        Ratio::Surd(start) => expand_until_recurrence(start, budget),
    }
}

fn expand_until_recurrence(start: QuadraticSurd, budget: u64) -> Result<AnthTrace> {
    let mut seen: HashMap<QuadraticSurd, usize> = HashMap::new();
    let mut quotients = Vec::new();
    let mut state = start;
    loop {
        if let Some(&first) = seen.get(&state) {
            return Ok(AnthTrace {
                steps_executed: quotients.len() as u64,
                termination: Termination::EventuallyPeriodic {
                    preperiod_len: first,
                    period_len: quotients.len() - first,
                    witness_state: state,
                },
                quotients,
            });
        }
        if quotients.len() as u64 >= budget {
            return Err(Error::Budget { max_steps: budget });
        }
        let (i, next) = anth_step(&state)?;
        seen.insert(std::mem::replace(&mut state, next), quotients.len());
        quotients.push(i);
    }
}

/// `Anth(√c, 1)`.
pub fn sqrt_trace(c: u64, max_steps: Option<u64>) -> Result<AnthTrace> {
    let root = make_sqrt(&Natural::from(c))?;
    anthyphairesis(&root, &Magnitude::integer(1)?, max_steps)
}

/// `Anth(√c, 1)` for every `c` in `from..=to`, in order.
pub fn sqrt_traces(from: u64, to: u64, exec: Exec) -> Vec<(u64, Result<AnthTrace>)> {
    exec.map_range(from, to, |c| (c, sqrt_trace(c, None)))
}

/// Exact remainders `e_1 … e_k` of the division chain
/// `a = I_0·b + e_1, b = I_1·e_1 + e_2, …`.
///
/// Only true remainders (smaller than the current divisor) appear; the list
/// stops early when a remainder vanishes. Every emitted pair is checked to
/// satisfy `0 < e_{n+1} < e_n` exactly.
pub fn remainder_sequence(a: &Magnitude, b: &Magnitude, k: usize) -> Result<Vec<QFieldElement>> {
    let x = ratio_exceeding_one(a, b)?;
    let mut prev = field_element(a)?;
    let mut cur = field_element(b)?;
    let mut out = Vec::with_capacity(k);
    for quotient in QuotientStream::new(x).take(k) {
        let next = prev.checked_sub(&cur.scale(&quotient?))?;
        match sign_of(&next) {
            Sign::NoSign => break,
            Sign::Minus => {
                return Err(Error::Internal(format!(
                    "negative remainder {next} after {cur}"
                )))
            }
            Sign::Plus => {}
        }
        if sign_of(&cur.checked_sub(&next)?) != Sign::Plus {
            return Err(Error::Internal(format!(
                "remainder {next} is not smaller than {cur}"
            )));
        }
        out.push(next.clone());
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(out)
}

/// Finite traces are commensurable, with the common measure read off the
/// continuant of the quotients; periodic traces are incommensurable.
pub fn verdict(trace: &AnthTrace) -> Verdict {
    match trace.termination {
        Termination::Finite => {
            let (p, q) = reconstruct_from_quotients(&trace.quotients)
                .expect("finite traces have nonempty positive quotients");
            Verdict::Commensurable {
                common_measure: CommonMeasure {
                    a_multiple: p,
                    b_multiple: q,
                },
                quotients: trace.quotients.clone(),
            }
        }
        Termination::EventuallyPeriodic { .. } => Verdict::Incommensurable,
    }
}

/// Coprime `(m, n)` with `a/b = m/n` when the ratio is rational.
///
/// Pairs from different quadratic fields have an irrational ratio and give
/// `None` as well.
pub fn number_to_number(a: &Magnitude, b: &Magnitude) -> Result<Option<(Natural, Natural)>> {
    let x = match ratio(a, b) {
        Ok(x) => x,
        Err(Error::Domain(msg)) if msg.starts_with("incompatible") => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(match x {
        Ratio::Rational(r) => {
            let (m, n) = r.into_raw();
            Some((
                m.to_biguint().expect("positive ratio"),
                n.to_biguint().expect("positive denominator"),
            ))
        }
        Ratio::Surd(_) => None,
    })
}
