//! Independent oracles for the integration and acceptance tests. Nothing
//! here calls into the library's arithmetic paths.

#![allow(dead_code)]

use anth_core::certificates::Certificate;
use anth_core::{Integer, Natural, Rational};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

/// Fractional bits of the fixed-point oracle.
pub const ORACLE_BITS: u64 = 128;

/// gcd by repeated subtraction only.
pub fn subtraction_gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    while a != b {
        if a > b {
            // batch the subtraction to keep large, lopsided pairs fast
            let k = (a - 1) / b;
            a -= k * b;
        } else {
            let k = (b - 1) / a;
            b -= k * a;
        }
    }
    a
}

/// `⌊√n⌋` by bisection.
pub fn bisect_sqrt(n: &Natural) -> Natural {
    let mut lo = Natural::zero();
    let mut hi = n + 1u32;
    // invariant: lo² ≤ n < hi²
    while &hi - &lo > Natural::one() {
        let mid: Natural = (&lo + &hi) >> 1;
        if &mid * &mid <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Bracket `lo ≤ √d < hi` with `hi − lo = 2^-128`.
pub fn sqrt_bracket(d: u64) -> (Rational, Rational) {
    let scaled = Natural::from(d) << (2 * ORACLE_BITS);
    let s = Integer::from(bisect_sqrt(&scaled));
    let den = Integer::one() << ORACLE_BITS;
    (
        Rational::new(s.clone(), den.clone()),
        Rational::new(s + 1, den),
    )
}

/// Leading continued-fraction quotients that every real in `[lo, hi)`
/// shares. Stops as soon as the bracket straddles an integer.
pub fn interval_cf(mut lo: Rational, mut hi: Rational, max_terms: usize) -> Vec<u64> {
    let mut out = Vec::new();
    while out.len() < max_terms {
        let a = lo.floor();
        if a != hi.floor() || hi == a {
            break;
        }
        out.push(a.to_integer().try_into().expect("small quotient"));
        let (fl, fh) = (&lo - &a, &hi - &a);
        if fl.is_zero() {
            break;
        }
        // x ↦ 1/(x − a) reverses the bracket
        lo = fh.recip();
        hi = fl.recip();
    }
    out
}

/// Numeric-oracle quotients of `√d`.
pub fn oracle_sqrt_cf(d: u64, max_terms: usize) -> Vec<u64> {
    let (lo, hi) = sqrt_bracket(d);
    interval_cf(lo, hi, max_terms)
}

/// Floor of `(p + √d)/q` from the 128-bit bracket, `None` if the bracket
/// straddles an integer.
pub fn oracle_floor(p: &Integer, q: &Integer, d: &Natural) -> Option<Integer> {
    let scaled = d << (2 * ORACLE_BITS);
    let s = Integer::from(bisect_sqrt(&scaled));
    let den = Integer::one() << ORACLE_BITS;
    let lo = Rational::new(p * &den + &s, &den * q);
    let hi = Rational::new(p * &den + s + 1, den * q);
    let (a, b) = (lo.floor(), hi.floor());
    // For q < 0 the endpoints swap roles; both floors must agree either way.
    let exact_hit = if q.is_positive() { hi == b } else { lo == a };
    (a == b && !exact_hit).then(|| a.to_integer())
}

/// All integer-valued leaves of a certificate document, as JSON pointers.
pub fn integer_leaves(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                integer_leaves(child, format!("{path}/{k}"), out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                integer_leaves(child, format!("{path}/{i}"), out);
            }
        }
        Value::String(s) if s.parse::<Integer>().is_ok() => out.push(path),
        Value::Number(_) => out.push(path),
        _ => {}
    }
}

/// Every single-field ±1 mutation of a certificate, as document text.
pub fn single_field_mutations(cert: &Certificate) -> Vec<String> {
    let doc: Value = serde_json::from_str(&anth_core::certificates::serialize(cert)).unwrap();
    let mut paths = Vec::new();
    integer_leaves(&doc, String::new(), &mut paths);
    let mut out = Vec::new();
    for path in paths {
        for delta in [-1i64, 1] {
            let mut mutated = doc.clone();
            let leaf = mutated.pointer_mut(&path).unwrap();
            *leaf = match leaf {
                Value::String(s) => {
                    Value::String((s.parse::<Integer>().unwrap() + delta).to_string())
                }
                Value::Number(n) => Value::from(n.as_i64().unwrap() + delta),
                _ => unreachable!(),
            };
            out.push(serde_json::to_string_pretty(&mutated).unwrap());
        }
    }
    out
}

/// True when the mutated document is rejected by parse or fails check.
pub fn mutation_detected(text: &str) -> bool {
    match anth_core::certificates::parse(text) {
        Err(_) => true,
        Ok(cert) => !matches!(anth_core::certificates::check(&cert), Ok(true)),
    }
}

pub fn is_square(c: u64) -> bool {
    let r = bisect_sqrt(&Natural::from(c));
    &r * &r == Natural::from(c)
}

pub fn floor_sqrt(c: u64) -> u64 {
    bisect_sqrt(&Natural::from(c)).try_into().unwrap()
}

pub fn reduce(p: u64, q: u64) -> (u64, u64) {
    let g = p.gcd(&q);
    (p / g, q / g)
}
