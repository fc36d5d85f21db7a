//! Convergents of a quotient sequence, side and diameter numbers, and
//! Pell residuals.

use num_traits::{One, Zero};

use crate::{Error, Integer, Natural, Result};

/// The `index`-th convergent `p/q` of a quotient sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: Natural,
    pub q: Natural,
    pub index: usize,
}

/// First `k` convergents, `p_n = I_n·p_{n−1} + p_{n−2}` and likewise for `q`,
/// seeded so that index 0 is `I_0/1`.
pub fn convergents(quotients: &[Natural], k: usize) -> Result<Vec<Convergent>> {
    if k > quotients.len() {
        return Err(Error::domain(format!(
            "requested {k} convergents from {} quotients",
            quotients.len()
        )));
    }
    if quotients[..k].iter().any(Zero::is_zero) {
        return Err(Error::domain("quotients must all be at least 1"));
    }
    // (p_{n-2}, p_{n-1}) and (q_{n-2}, q_{n-1})
    let (mut p2, mut p1) = (Natural::zero(), Natural::one());
    let (mut q2, mut q1) = (Natural::one(), Natural::zero());
    Ok(quotients[..k]
        .iter()
        .enumerate()
        .map(|(index, i)| {
            let p = i * &p1 + &p2;
            let q = i * &q1 + &q2;
            p2 = std::mem::replace(&mut p1, p.clone());
            q2 = std::mem::replace(&mut q1, q.clone());
            Convergent { p, q, index }
        })
        .collect())
}

/// `(s_n, d_n)` from `s_1 = d_1 = 1`, `s_{k+1} = s_k + d_k`,
/// `d_{k+1} = 2·s_k + d_k`.
pub fn side_diameter(n: usize) -> Result<(Natural, Natural)> {
    if n == 0 {
        return Err(Error::domain("side and diameter numbers start at n = 1"));
    }
    let (mut s, mut d) = (Natural::one(), Natural::one());
    for _ in 1..n {
        let next_s = &s + &d;
        d = &s * 2u32 + &d;
        s = next_s;
    }
    Ok((s, d))
}

/// `p² − C·q²`.
pub fn pell_residual(p: &Natural, q: &Natural, c: &Natural) -> Integer {
    Integer::from(p * p) - Integer::from(c * q * q)
}
