//! Replayable proof certificates and their checker.
//!
//! Four kinds of certificate exist:
//!
//! * `finite_anth`: a natural-number division chain with its gcd
//!   (commensurability).
//! * `periodic_anth`: a complete-quotient state of `√C` that recurs after a
//!   stated period (incommensurability of `√C` with the unit).
//! * `parity`: the even/odd argument for `C = 2k²`.
//! * `residue_descent`: a descent by 4 followed by a squares-mod-4/8 case
//!   analysis on `m² = C·n²`.
//!
//! [`check`] replays each certificate with small, bounded recomputation and
//! trusts nothing it is handed. The text form is a JSON object with sorted
//! keys, a `kind` tag, `version: 1`, and every integer as a decimal string.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::{AnthTrace, Termination};
use crate::euclid::anth_nat;
use crate::exec::Exec;
use crate::surd::{anth_step, is_perfect_square, QuadraticSurd};
use crate::{Error, Integer, Natural, Result};

pub const FORMAT_VERSION: u64 = 1;

/// Decimal-string (de)serialization for big integers.
///
/// Accepted shapes are `0`, `[1-9][0-9]*`, and for signed fields the same
/// with a leading `-` (but not `-0`). Anything else is rejected.
mod dec {
    use serde::de::{Deserializer, Error as _};
    use serde::{Deserialize, Serializer};

    use crate::{Integer, Natural};

    fn is_canonical_natural(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
    }

    pub(super) fn parse_natural(s: &str) -> Option<Natural> {
        is_canonical_natural(s).then(|| s.parse().ok()).flatten()
    }

    pub(super) fn parse_integer(s: &str) -> Option<Integer> {
        match s.strip_prefix('-') {
            Some("0") => None,
            Some(rest) => parse_natural(rest).map(|n| -Integer::from(n)),
            None => parse_natural(s).map(Integer::from),
        }
    }

    pub mod nat {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Natural, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&x.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Natural, D::Error> {
            let s = String::deserialize(d)?;
            parse_natural(&s)
                .ok_or_else(|| D::Error::custom(format!("malformed natural number {s:?}")))
        }
    }

    pub mod int {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Integer, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&x.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
            let s = String::deserialize(d)?;
            parse_integer(&s).ok_or_else(|| D::Error::custom(format!("malformed integer {s:?}")))
        }
    }

    pub mod count {
        use super::*;

        pub fn serialize<S: Serializer>(x: &usize, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&x.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
            let s = String::deserialize(d)?;
            super::parse_natural(&s)
                .and_then(|n| usize::try_from(n).ok())
                .ok_or_else(|| D::Error::custom(format!("malformed count {s:?}")))
        }
    }

    pub mod nat_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Natural], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Natural>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| {
                    parse_natural(s)
                        .ok_or_else(|| D::Error::custom(format!("malformed natural number {s:?}")))
                })
                .collect()
        }
    }
}

/// Complete-quotient state `(P + √D)/Q` as carried in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessState {
    #[serde(rename = "P", with = "dec::int")]
    pub p: Integer,
    #[serde(rename = "Q", with = "dec::int")]
    pub q: Integer,
    #[serde(rename = "D", with = "dec::nat")]
    pub d: Natural,
}

impl WitnessState {
    pub fn to_surd(&self) -> Result<QuadraticSurd> {
        QuadraticSurd::new(self.p.clone(), self.q.clone(), self.d.clone())
    }
}

impl From<&QuadraticSurd> for WitnessState {
    fn from(s: &QuadraticSurd) -> Self {
        WitnessState {
            p: s.p().clone(),
            q: s.q().clone(),
            d: s.d().clone(),
        }
    }
}

/// Residue class of `C` in the residue-descent method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResidueClass {
    #[serde(rename = "4n+3")]
    FourNPlusThree,
    #[serde(rename = "8k+5")]
    EightKPlusFive,
    #[serde(rename = "4n+2")]
    FourNPlusTwo,
    #[serde(rename = "4n")]
    FourN,
    #[serde(rename = "8k+1")]
    EightKPlusOne,
}

impl ResidueClass {
    pub fn of(c: &Natural) -> ResidueClass {
        let r8 = (c % 8u32).to_u32().expect("residue below 8");
        match r8 {
            1 => ResidueClass::EightKPlusOne,
            5 => ResidueClass::EightKPlusFive,
            3 | 7 => ResidueClass::FourNPlusThree,
            2 | 6 => ResidueClass::FourNPlusTwo,
            _ => ResidueClass::FourN,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ResidueClass::FourNPlusThree => "4n+3",
            ResidueClass::EightKPlusFive => "8k+5",
            ResidueClass::FourNPlusTwo => "4n+2",
            ResidueClass::FourN => "4n",
            ResidueClass::EightKPlusOne => "8k+1",
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn matches(self, x: u64) -> bool {
        x.is_multiple_of(2) == (self == Parity::Even)
    }
}

/// The two unknowns of `m² = C·n²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unknown {
    M,
    N,
}

/// One checkable assertion of a parity or residue-descent argument. All of
/// them are about a hypothetical coprime solution of `m² = C·n²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "assertion", rename_all = "snake_case", deny_unknown_fields)]
pub enum CongruenceStep {
    /// `c = factor²·base`, so `√c` is rational exactly when `√base` is.
    Reduction {
        #[serde(with = "dec::nat")]
        c: Natural,
        #[serde(with = "dec::nat")]
        factor: Natural,
        #[serde(with = "dec::nat")]
        base: Natural,
    },
    /// `a·X² = b·Y²` with `a` odd and `b` even forces `X` even, where the
    /// relation is `[a, b]` and `X` is `subject`.
    ForcedEven {
        subject: Unknown,
        #[serde(with = "dec::nat_vec")]
        relation: Vec<Natural>,
    },
    /// Both unknowns divisible by `modulus` contradicts `gcd(m, n) = 1`.
    CoprimeContradiction {
        #[serde(with = "dec::nat")]
        modulus: Natural,
    },
    /// `m² = from·n²` with `from = 4·to` forces `m` even, and `m = 2m'`
    /// leaves `m'² = to·n²` with `m'`, `n` still coprime.
    Descent {
        #[serde(with = "dec::nat")]
        from: Natural,
        #[serde(with = "dec::nat")]
        to: Natural,
    },
    /// For `m`, `n` of the stated parities, the possible values of
    /// `m² mod modulus` and `c_residue·n² mod modulus` are disjoint.
    ParityCase {
        #[serde(with = "dec::nat")]
        modulus: Natural,
        #[serde(with = "dec::nat")]
        c_residue: Natural,
        m_parity: Parity,
        n_parity: Parity,
        #[serde(with = "dec::nat_vec")]
        m_square_residues: Vec<Natural>,
        #[serde(with = "dec::nat_vec")]
        rhs_residues: Vec<Natural>,
    },
}

fn join(xs: &[Natural]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unknown::M => "m",
            Unknown::N => "n",
        })
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl fmt::Display for CongruenceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceStep::Reduction { c, factor, base } => {
                write!(f, "{c} = {factor}^2 * {base}, so sqrt({c}) = {factor} * sqrt({base})")
            }
            CongruenceStep::ForcedEven { subject, relation } => {
                let other = match subject {
                    Unknown::M => Unknown::N,
                    Unknown::N => Unknown::M,
                };
                match relation.as_slice() {
                    [a, b] => write!(
                        f,
                        "{a}*{subject}^2 = {b}*{other}^2 with {a} odd and {b} even, so {subject} is even"
                    ),
                    _ => write!(f, "forced even {subject} from [{}]", join(relation)),
                }
            }
            CongruenceStep::CoprimeContradiction { modulus } => write!(
                f,
                "m and n both divisible by {modulus} contradicts gcd(m, n) = 1"
            ),
            CongruenceStep::Descent { from, to } => write!(
                f,
                "m^2 = {from}*n^2 forces m even; m = 2m' leaves m'^2 = {to}*n^2"
            ),
            CongruenceStep::ParityCase {
                modulus,
                c_residue,
                m_parity,
                n_parity,
                m_square_residues,
                rhs_residues,
            } => write!(
                f,
                "m {m_parity}, n {n_parity}: m^2 mod {modulus} in {{{}}}, {c_residue}*n^2 mod {modulus} in {{{}}}, disjoint",
                join(m_square_residues),
                join(rhs_residues)
            ),
        }
    }
}

/// Moduli the residue method works with.
pub const RESIDUE_MODULI: [u64; 2] = [4, 8];

/// Residue sets for one parity case: `{x² mod M}` over `x` of `m_parity`
/// and `{c_residue·y² mod M}` over `y` of `n_parity`, both sorted.
///
/// `modulus` must be even for parity classes to be well defined mod `M`.
pub fn parity_case_residues(
    modulus: u64,
    c_residue: u64,
    m_parity: Parity,
    n_parity: Parity,
) -> (Vec<u64>, Vec<u64>) {
    let squares: BTreeSet<u64> = (0..modulus)
        .filter(|&x| m_parity.matches(x))
        .map(|x| x * x % modulus)
        .collect();
    let rhs: BTreeSet<u64> = (0..modulus)
        .filter(|&y| n_parity.matches(y))
        .map(|y| c_residue * y * y % modulus)
        .collect();
    (squares.into_iter().collect(), rhs.into_iter().collect())
}

/// The three parity patterns a coprime pair `(m, n)` can have.
pub const COPRIME_PARITIES: [(Parity, Parity); 3] = [
    (Parity::Odd, Parity::Odd),
    (Parity::Odd, Parity::Even),
    (Parity::Even, Parity::Odd),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Certificate {
    FiniteAnth {
        version: FormatVersion,
        #[serde(with = "dec::nat")]
        m: Natural,
        #[serde(with = "dec::nat")]
        n: Natural,
        #[serde(with = "dec::nat_vec")]
        quotients: Vec<Natural>,
        #[serde(with = "dec::nat")]
        gcd: Natural,
    },
    PeriodicAnth {
        version: FormatVersion,
        #[serde(rename = "C", with = "dec::nat")]
        c: Natural,
        #[serde(with = "dec::nat_vec")]
        preperiod_quotients: Vec<Natural>,
        #[serde(with = "dec::nat_vec")]
        period_quotients: Vec<Natural>,
        witness_state: WitnessState,
        /// Steps after which `witness_state` recurs.
        #[serde(with = "dec::count")]
        recurrence_offset: usize,
    },
    Parity {
        version: FormatVersion,
        #[serde(rename = "C", with = "dec::nat")]
        c: Natural,
        #[serde(with = "dec::nat")]
        reduction_factor: Natural,
        steps: Vec<CongruenceStep>,
    },
    ResidueDescent {
        version: FormatVersion,
        #[serde(rename = "C", with = "dec::nat")]
        c: Natural,
        class_label: ResidueClass,
        #[serde(with = "dec::nat_vec")]
        descent_chain: Vec<Natural>,
        steps: Vec<CongruenceStep>,
    },
}

/// The document format version; (de)serializes as the JSON integer 1 and
/// rejects anything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FormatVersion;

impl Serialize for FormatVersion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(FORMAT_VERSION)
    }
}

impl<'de> Deserialize<'de> for FormatVersion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = u64::deserialize(d)?;
        if v != FORMAT_VERSION {
            return Err(serde::de::Error::custom(format!(
                "unsupported certificate version {v}"
            )));
        }
        Ok(FormatVersion)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    FiniteAnth,
    PeriodicAnth,
    Parity,
    ResidueDescent,
}

impl CertificateKind {
    pub fn tag(self) -> &'static str {
        match self {
            CertificateKind::FiniteAnth => "finite_anth",
            CertificateKind::PeriodicAnth => "periodic_anth",
            CertificateKind::Parity => "parity",
            CertificateKind::ResidueDescent => "residue_descent",
        }
    }
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::FiniteAnth { .. } => CertificateKind::FiniteAnth,
            Certificate::PeriodicAnth { .. } => CertificateKind::PeriodicAnth,
            Certificate::Parity { .. } => CertificateKind::Parity,
            Certificate::ResidueDescent { .. } => CertificateKind::ResidueDescent,
        }
    }

    /// Commensurability certificate for naturals `m > n > 0`.
    pub fn finite_anth(m: &Natural, n: &Natural) -> Result<Certificate> {
        let chain = anth_nat(m, n)?;
        Ok(Certificate::FiniteAnth {
            version: FormatVersion,
            m: m.clone(),
            n: n.clone(),
            quotients: chain.quotients,
            gcd: chain.gcd,
        })
    }

    /// Periodicity certificate from a trace of `Anth(√c, 1)`.
    pub fn periodic_anth(c: &Natural, trace: &AnthTrace) -> Result<Certificate> {
        let Termination::EventuallyPeriodic {
            period_len,
            witness_state,
            ..
        } = &trace.termination
        else {
            return Err(Error::domain(format!(
                "Anth(√{c}, 1) is finite; no periodicity certificate exists"
            )));
        };
        if witness_state.d() != c {
            return Err(Error::domain(format!(
                "trace is not an expansion of √{c} (witness D = {})",
                witness_state.d()
            )));
        }
        Ok(Certificate::PeriodicAnth {
            version: FormatVersion,
            c: c.clone(),
            preperiod_quotients: trace.preperiod().to_vec(),
            period_quotients: trace.period().to_vec(),
            witness_state: witness_state.into(),
            recurrence_offset: *period_len,
        })
    }

    /// Structural invariants that make a certificate well formed, as
    /// opposed to valid. Violations are [`Error::Semantic`].
    pub fn validate(&self) -> Result<()> {
        let positive = |qs: &[Natural], what: &str| {
            if qs.iter().any(Zero::is_zero) {
                Err(Error::semantic(format!("{what} contains a zero quotient")))
            } else {
                Ok(())
            }
        };
        match self {
            Certificate::FiniteAnth { quotients, gcd, .. } => {
                if quotients.is_empty() {
                    return Err(Error::semantic("finite_anth has no quotients"));
                }
                positive(quotients, "quotients")?;
                if gcd.is_zero() {
                    return Err(Error::semantic("finite_anth gcd is zero"));
                }
            }
            Certificate::PeriodicAnth {
                preperiod_quotients,
                period_quotients,
                witness_state,
                ..
            } => {
                positive(preperiod_quotients, "preperiod_quotients")?;
                positive(period_quotients, "period_quotients")?;
                if period_quotients.is_empty() {
                    return Err(Error::semantic("periodic_anth has an empty period"));
                }
                witness_state
                    .to_surd()
                    .map_err(|e| Error::semantic(format!("invalid witness_state: {e}")))?;
            }
            Certificate::Parity { steps, .. } | Certificate::ResidueDescent { steps, .. } => {
                if steps.is_empty() {
                    return Err(Error::semantic("argument has no steps"));
                }
                if let Certificate::ResidueDescent { descent_chain, .. } = self {
                    if descent_chain.is_empty() {
                        return Err(Error::semantic(
                            "residue_descent has an empty descent_chain",
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Canonical text form: sorted keys, two-space indentation, trailing newline.
pub fn serialize(cert: &Certificate) -> String {
    // serde_json's Map is ordered by key, which makes the output canonical.
    let value = serde_json::to_value(cert).expect("certificates always serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("values always serialize");
    text.push('\n');
    text
}

/// Strict inverse of [`serialize`]: unknown fields and non-canonical
/// integers are parse errors, broken invariants are semantic errors.
pub fn parse(text: &str) -> Result<Certificate> {
    let cert: Certificate = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    cert.validate()?;
    Ok(cert)
}

/// Replays a certificate. `Ok(false)` means the replay disagreed with what
/// the certificate claims; `Err` means it is structurally malformed.
pub fn check(cert: &Certificate) -> Result<bool> {
    cert.validate()?;
    Ok(match cert {
        Certificate::FiniteAnth {
            m,
            n,
            quotients,
            gcd,
            ..
        } => check_finite(m, n, quotients, gcd),
        Certificate::PeriodicAnth {
            c,
            preperiod_quotients,
            period_quotients,
            witness_state,
            recurrence_offset,
            ..
        } => check_periodic(
            c,
            preperiod_quotients,
            period_quotients,
            witness_state,
            *recurrence_offset,
        ),
        Certificate::Parity {
            c,
            reduction_factor,
            steps,
            ..
        } => check_parity(c, reduction_factor, steps),
        Certificate::ResidueDescent {
            c,
            class_label,
            descent_chain,
            steps,
            ..
        } => check_residue(c, *class_label, descent_chain, steps),
    })
}

/// Checks many certificates, in parallel when enabled.
pub fn check_all(certs: &[Certificate], exec: Exec) -> Vec<Result<bool>> {
    exec.map(certs, check)
}

fn check_finite(m: &Natural, n: &Natural, quotients: &[Natural], gcd: &Natural) -> bool {
    match anth_nat(m, n) {
        Ok(chain) => chain.quotients == quotients && &chain.gcd == gcd,
        Err(_) => false,
    }
}

fn check_periodic(
    c: &Natural,
    preperiod: &[Natural],
    period: &[Natural],
    witness: &WitnessState,
    recurrence_offset: usize,
) -> bool {
    if &witness.d != c || recurrence_offset != period.len() {
        return false;
    }
    let (Ok(witness), Ok(start)) = (witness.to_surd(), QuadraticSurd::sqrt(c)) else {
        return false;
    };
    // Replays `expected` quotients from `state`; returns the state reached.
    let replay = |mut state: QuadraticSurd, expected: &[Natural]| {
        for q in expected {
            match anth_step(&state) {
                Ok((i, next)) if &i == q => state = next,
                _ => return None,
            }
        }
        Some(state)
    };
    replay(start, preperiod).as_ref() == Some(&witness)
        && replay(witness.clone(), period).as_ref() == Some(&witness)
}

fn small(x: &Natural) -> Option<u64> {
    x.to_u64()
}

/// `a·x² ≡ 0 (mod 2)` forces `x ≡ 0 (mod 2)` when `a` is odd.
fn forces_even(a: &Natural, b: &Natural) -> bool {
    let (a2, b2) = ((a % 2u32).to_u64(), (b % 2u32).to_u64());
    if a2 != Some(1) || b2 != Some(0) {
        return false;
    }
    let a2 = a2.unwrap_or(0);
    (0u64..2).all(|x| (a2 * x * x) % 2 != 0 || x == 0)
}

fn check_parity(c: &Natural, k: &Natural, steps: &[CongruenceStep]) -> bool {
    if k.is_zero() || *c != Natural::from(2u32) * k * k {
        return false;
    }
    let [CongruenceStep::Reduction {
        c: rc,
        factor,
        base,
    }, rest @ ..] = steps
    else {
        return false;
    };
    if rc != c || factor != k || *base != Natural::from(2u32) {
        return false;
    }
    // Relation a·X² = b·Y² for the reduced pair, starting from m² = 2n².
    let mut relation = (Natural::one(), base.clone());
    let mut subject = Unknown::M;
    let mut shown_even = BTreeSet::new();
    for (i, step) in rest.iter().enumerate() {
        match step {
            CongruenceStep::ForcedEven {
                subject: s,
                relation: r,
            } => {
                if *s != subject
                    || r.len() != 2
                    || r[0] != relation.0
                    || r[1] != relation.1
                    || !forces_even(&r[0], &r[1])
                {
                    return false;
                }
                shown_even.insert(*s);
                // X = 2X' in a·X² = b·Y² gives (b/g)·Y² = (4a/g)·X'².
                let four_a = &relation.0 * 4u32;
                let g = relation.1.gcd(&four_a);
                relation = (&relation.1 / &g, four_a / &g);
                subject = match subject {
                    Unknown::M => Unknown::N,
                    Unknown::N => Unknown::M,
                };
            }
            CongruenceStep::CoprimeContradiction { modulus } => {
                return i + 1 == rest.len()
                    && *modulus == Natural::from(2u32)
                    && shown_even.contains(&Unknown::M)
                    && shown_even.contains(&Unknown::N);
            }
            _ => return false,
        }
    }
    false
}

fn check_parity_case(terminal: &Natural, step: &CongruenceStep) -> Option<(Parity, Parity)> {
    let CongruenceStep::ParityCase {
        modulus,
        c_residue,
        m_parity,
        n_parity,
        m_square_residues,
        rhs_residues,
    } = step
    else {
        return None;
    };
    let m = small(modulus).filter(|m| RESIDUE_MODULI.contains(m))?;
    let r = small(c_residue)?;
    if (terminal % m).to_u64() != Some(r) {
        return None;
    }
    let (squares, rhs) = parity_case_residues(m, r, *m_parity, *n_parity);
    let as_u64 = |xs: &[Natural]| xs.iter().map(small).collect::<Option<Vec<_>>>();
    if as_u64(m_square_residues)? != squares || as_u64(rhs_residues)? != rhs {
        return None;
    }
    squares
        .iter()
        .all(|s| !rhs.contains(s))
        .then_some((*m_parity, *n_parity))
}

fn check_residue(
    c: &Natural,
    class: ResidueClass,
    chain: &[Natural],
    steps: &[CongruenceStep],
) -> bool {
    if chain.first() != Some(c) || ResidueClass::of(c) != class || is_perfect_square(c) {
        return false;
    }
    let links = chain.len() - 1;
    if steps.len() != links + COPRIME_PARITIES.len() {
        return false;
    }
    let (descents, cases) = steps.split_at(links);
    for (link, step) in chain.windows(2).zip(descents) {
        match step {
            CongruenceStep::Descent { from, to }
                if from == &link[0] && to == &link[1] && *from == to * 4u32 => {}
            _ => return false,
        }
    }
    let terminal = chain.last().expect("chain is nonempty");
    let covered: Option<BTreeSet<_>> = cases
        .iter()
        .map(|s| check_parity_case(terminal, s))
        .collect();
    covered.is_some_and(|set| COPRIME_PARITIES.iter().all(|p| set.contains(p)))
}
