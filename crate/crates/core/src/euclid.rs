//! Anthyphairesis of natural numbers: the Euclidean division chain.

use num_integer::Integer as _;
use num_traits::{One, Zero};

use crate::engine::{anthyphairesis, Termination};
use crate::surd::Magnitude;
use crate::{Error, Natural, Rational, Result};

/// Quotients and gcd of a finite natural-number anthyphairesis.
///
/// The quotient list is canonical: its last entry is at least 2 whenever the
/// list has more than one element, so two chains describe the same ratio
/// exactly when their quotient lists are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatAnthResult {
    pub quotients: Vec<Natural>,
    pub gcd: Natural,
}

/// Runs the division chain `m = k1·n + p1, n = k2·p1 + p2, …` to completion.
///
/// Requires `m > n > 0`; equal inputs are rejected rather than producing a
/// single quotient of 1.
pub fn anth_nat(m: &Natural, n: &Natural) -> Result<NatAnthResult> {
    if n.is_zero() {
        return Err(Error::domain("anth_nat requires n > 0"));
    }
    if m <= n {
        return Err(Error::domain(format!(
            "anth_nat requires m > n (got m = {m}, n = {n})"
        )));
    }
    let mut quotients = Vec::new();
    let (mut a, mut b) = (m.clone(), n.clone());
    loop {
        let (q, r) = a.div_rem(&b);
        quotients.push(q);
        if r.is_zero() {
            break;
        }
        a = std::mem::replace(&mut b, r);
    }
    Ok(NatAnthResult { quotients, gcd: b })
}

/// Greatest common divisor of two naturals, not both zero.
pub fn gcd_of(m: &Natural, n: &Natural) -> Result<Natural> {
    match (m.is_zero(), n.is_zero()) {
        (true, true) => Err(Error::domain("gcd_of(0, 0) is undefined")),
        (true, false) => Ok(n.clone()),
        (false, true) => Ok(m.clone()),
        _ if m == n => Ok(m.clone()),
        _ if m > n => Ok(anth_nat(m, n)?.gcd),
        _ => Ok(anth_nat(n, m)?.gcd),
    }
}

/// Rebuilds the coprime pair `(p, q)` whose division chain has the given
/// quotients, using the continuant recurrence `p_k = I_k·p_{k-1} + p_{k-2}`.
///
/// A trailing quotient of 1 is accepted; the resulting pair then has the
/// canonical chain with that 1 folded into its predecessor.
pub fn reconstruct_from_quotients(quotients: &[Natural]) -> Result<(Natural, Natural)> {
    if quotients.is_empty() {
        return Err(Error::domain(
            "cannot reconstruct from an empty quotient list",
        ));
    }
    if quotients.iter().any(Zero::is_zero) {
        return Err(Error::domain("quotients must all be at least 1"));
    }
    // Fold from the tail: x = I_k + 1/x_{k+1}, carried as the pair (p, q).
    let mut p = Natural::one();
    let mut q = Natural::zero();
    for i in quotients.iter().rev() {
        let next_p = i * &p + &q;
        q = std::mem::replace(&mut p, next_p);
    }
    Ok((p, q))
}

/// Executable form of the scaling lemma `Anth(m·c, n·c) = Anth(m, n)`.
///
/// Runs the general magnitude engine on the rational pair `(m·c, n·c)` and
/// compares its quotients with [`anth_nat`]. Always true for valid input; a
/// `false` return exposes a defect in one of the two routes.
pub fn scale_invariance_check(m: &Natural, n: &Natural, c: &Rational) -> Result<bool> {
    if c <= &Rational::zero() {
        return Err(Error::domain("scale factor must be positive"));
    }
    let direct = anth_nat(m, n)?;
    let to_rational = |x: &Natural| Rational::from_integer(x.clone().into());
    let a = Magnitude::Rational(to_rational(m) * c);
    let b = Magnitude::Rational(to_rational(n) * c);
    let trace = anthyphairesis(&a, &b, None)?;
    Ok(trace.termination == Termination::Finite && trace.quotients == direct.quotients)
}
