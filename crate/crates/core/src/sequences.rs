//! Coefficient sequences: the character polynomial, its rotations, and the
//! Littlewood completions built on top of it.
//!
//! A completion `V` lives on the indices `j` with `gcd(j, n) > 1`, exactly
//! where the character polynomial vanishes, so `J + V` has every coefficient
//! in `{-1, +1}`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numbers::{factor_odd_squarefree, is_prime, jacobi_odd, FactoredModulus};

/// Largest cototient for which full enumeration of completions is allowed.
pub const MAX_ENUMERATION_PSI: u64 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    Character,
    Completion,
    Littlewood,
    Other,
}

impl SequenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SequenceKind::Character => "character",
            SequenceKind::Completion => "completion",
            SequenceKind::Littlewood => "littlewood",
            SequenceKind::Other => "other",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "character" => Ok(SequenceKind::Character),
            "completion" => Ok(SequenceKind::Completion),
            "littlewood" => Ok(SequenceKind::Littlewood),
            "other" => Ok(SequenceKind::Other),
            _ => Err(Error::Parse(format!("unknown sequence kind `{s}`"))),
        }
    }
}

/// A coefficient vector over `{-1, 0, +1}`, read as the polynomial
/// `sum_j coeffs[j] z^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernarySequence {
    coeffs: Vec<i8>,
    kind: SequenceKind,
}

impl TernarySequence {
    /// Checks that every entry is ternary and that a Littlewood sequence has
    /// no zero entries. Support invariants tied to a modulus are checked by
    /// [`TernarySequence::check_support`].
    pub fn new(coeffs: Vec<i8>, kind: SequenceKind) -> Result<Self> {
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, c)| c.abs() > 1) {
            return Err(Error::InvalidEntry {
                index,
                value: value.into(),
            });
        }
        if kind == SequenceKind::Littlewood {
            if let Some(index) = coeffs.iter().position(|&c| c == 0) {
                return Err(Error::SupportViolation {
                    kind: kind.as_str(),
                    index,
                });
            }
        }
        Ok(TernarySequence { coeffs, kind })
    }

    pub(crate) fn from_parts_unchecked(coeffs: Vec<i8>, kind: SequenceKind) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.abs() <= 1));
        TernarySequence { coeffs, kind }
    }

    pub fn coeffs(&self) -> &[i8] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Number of nonzero coefficients, i.e. `||A||_2^2`.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn with_kind(mut self, kind: SequenceKind) -> Result<Self> {
        self.kind = kind;
        Self::new(self.coeffs, kind)
    }

    /// Verify the modulus-dependent invariant of `character` and
    /// `completion` sequences.
    pub fn check_support(&self, m: &FactoredModulus) -> Result<()> {
        if self.len() != m.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: m.len(),
            });
        }
        for (j, &c) in self.coeffs.iter().enumerate() {
            let ok = match self.kind {
                SequenceKind::Character => c == m.symbol(j as i64),
                SequenceKind::Completion => (c != 0) == (m.gcd_with(j as i64) > 1),
                SequenceKind::Littlewood => c != 0,
                SequenceKind::Other => true,
            };
            if !ok {
                return Err(Error::SupportViolation {
                    kind: self.kind.as_str(),
                    index: j,
                });
            }
        }
        Ok(())
    }

    /// Signs on the nonzero entries in increasing index order, as `+`/`-`.
    pub fn sign_string(&self) -> String {
        self.coeffs
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| if c > 0 { '+' } else { '-' })
            .collect()
    }

    /// Plain-text form: a header line `n kind` followed by one line of
    /// space-separated entries.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.coeffs.iter().map(i8::to_string).collect();
        format!("{} {}\n{}\n", self.len(), self.kind, body.join(" "))
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty sequence file".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad length: {e}")))?;
        let kind: SequenceKind = tokens
            .next()
            .ok_or_else(|| Error::Parse("missing kind".into()))?
            .parse()?;
        let coeffs = tokens
            .map(|t| {
                t.parse::<i8>()
                    .map_err(|e| Error::Parse(format!("bad entry `{t}`: {e}")))
            })
            .collect::<Result<Vec<i8>>>()?;
        if coeffs.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: coeffs.len(),
            });
        }
        Self::new(coeffs, kind)
    }
}

/// A real rotation parameter `r`, kept as an exact rational so that the
/// shift `R = floor(n r)` is computed without rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rotation(Ratio<i64>);

impl Rotation {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parse("rotation denominator is zero".into()));
        }
        Ok(Rotation(Ratio::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Rotation(Ratio::from_integer(0))
    }

    pub fn quarter() -> Self {
        Rotation(Ratio::new(1, 4))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `floor(n r)`, using floor rather than truncation for negative `r`.
    pub fn shift(&self, n: usize) -> i64 {
        let num = n as i128 * self.numer() as i128;
        num.div_euclid(self.denom() as i128) as i64
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rotation {
    type Err = Error;

    /// Accepts `p/q` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |e: std::num::ParseIntError| Error::Parse(format!("bad rotation `{s}`: {e}"));
        match s.trim().split_once('/') {
            Some((p, q)) => Rotation::new(
                p.trim().parse().map_err(bad)?,
                q.trim().parse().map_err(bad)?,
            ),
            None => Rotation::new(s.trim().parse().map_err(bad)?, 1),
        }
    }
}

/// Shift coefficients left cyclically by `shift` places: output index `k`
/// takes input index `(k + shift) mod n`.
pub fn rotate_by(a: &TernarySequence, shift: i64) -> TernarySequence {
    let n = a.len();
    if n == 0 {
        return a.clone();
    }
    let s = shift.rem_euclid(n as i64) as usize;
    let mut coeffs = a.coeffs.clone();
    coeffs.rotate_left(s);
    TernarySequence::from_parts_unchecked(coeffs, a.kind)
}

/// The rotation `A_r(z) = z^(-floor(n r)) A(z) mod (z^n - 1)`.
pub fn rotate(a: &TernarySequence, rot: Rotation) -> TernarySequence {
    rotate_by(a, rot.shift(a.len()))
}

/// The character polynomial: coefficient `j` is the Jacobi symbol `(j | n)`.
pub fn character_polynomial(m: &FactoredModulus) -> TernarySequence {
    let n = m.n();
    let coeffs = (0..n).map(|j| jacobi_odd(j as i64, n)).collect();
    TernarySequence::from_parts_unchecked(coeffs, SequenceKind::Character)
}

/// Indices `j` in `[0, n)` with `gcd(j, n) > 1`, ascending.
pub fn free_indices(m: &FactoredModulus) -> Vec<usize> {
    (0..m.n())
        .filter(|&j| j.gcd(&m.n()) > 1)
        .map(|j| j as usize)
        .collect()
}

fn completion_from_fn(m: &FactoredModulus, mut sign: impl FnMut(u64) -> i8) -> TernarySequence {
    let n = m.n();
    let coeffs = (0..n)
        .map(|j| if j.gcd(&n) > 1 { sign(j) } else { 0 })
        .collect();
    TernarySequence::from_parts_unchecked(coeffs, SequenceKind::Completion)
}

/// `V` with `+1` at every index sharing a factor with `n`.
pub fn completion_all_ones(m: &FactoredModulus) -> TernarySequence {
    completion_from_fn(m, |_| 1)
}

/// `V` with the constant `sign` at every free index. For prime `n` these are
/// the completions `J + 1` and `J - 1`.
pub fn completion_constant(m: &FactoredModulus, sign: i8) -> TernarySequence {
    assert!(sign == 1 || sign == -1);
    completion_from_fn(m, |_| sign)
}

/// `V_j = (j | n / gcd(j, n))` on the free indices.
///
/// At `j = 0` the modulus is `n / n = 1` and the symbol `(0 | 1)` is the empty
/// product `+1`; any other value would leave a zero in `J + V`.
pub fn completion_jacobi_product(m: &FactoredModulus) -> TernarySequence {
    let n = m.n();
    completion_from_fn(m, |j| jacobi_odd(j as i64, n / j.gcd(&n)))
}

/// `V(z) = sum_{j<p} z^(jq) - sum_{1<=j<q} z^(jp)` for odd primes `p > q`,
/// of length `n = pq`.
pub fn completion_two_prime(p: u64, q: u64) -> Result<TernarySequence> {
    for x in [p, q] {
        if !is_prime(x) || x == 2 {
            return Err(Error::NotPrime(x));
        }
    }
    if p <= q {
        return Err(Error::TwoPrimeOrder { p, q });
    }
    let n = (p * q) as usize;
    let mut coeffs = vec![0i8; n];
    for j in 0..p as usize {
        coeffs[j * q as usize] = 1;
    }
    for j in 1..q as usize {
        coeffs[j * p as usize] = -1;
    }
    Ok(TernarySequence::from_parts_unchecked(
        coeffs,
        SequenceKind::Completion,
    ))
}

/// Two-prime completion for a modulus with exactly two prime factors.
pub fn completion_two_prime_for(m: &FactoredModulus) -> Result<TernarySequence> {
    match m.prime_factors() {
        &[q, p] => completion_two_prime(p, q),
        _ => Err(Error::Config(format!(
            "two-prime completion needs exactly two prime factors, {m} has {}",
            m.omega()
        ))),
    }
}

/// Uniformly random member of the completion set: each free coefficient is
/// an independent fair sign drawn from a ChaCha8 stream seeded by `seed`.
pub fn completion_random(m: &FactoredModulus, seed: u64) -> TernarySequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    completion_from_fn(m, |_| if rng.gen::<bool>() { 1 } else { -1 })
}

/// The completion at position `index` of the lexicographic enumeration.
///
/// Free indices are taken in increasing order; the first free index is the
/// most significant bit, with bit `0` meaning `-1` and bit `1` meaning `+1`.
pub fn completion_at_index(m: &FactoredModulus, free: &[usize], index: u64) -> TernarySequence {
    let psi = free.len();
    let mut coeffs = vec![0i8; m.len()];
    for (i, &j) in free.iter().enumerate() {
        let bit = (index >> (psi - 1 - i)) & 1;
        coeffs[j] = if bit == 1 { 1 } else { -1 };
    }
    TernarySequence::from_parts_unchecked(coeffs, SequenceKind::Completion)
}

/// Lexicographic stream over all `2^psi(n)` completions.
#[derive(Debug, Clone)]
pub struct Completions {
    modulus: FactoredModulus,
    free: Vec<usize>,
    next: u64,
    total: u64,
}

impl Completions {
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for Completions {
    type Item = TernarySequence;

    fn next(&mut self) -> Option<TernarySequence> {
        if self.next == self.total {
            return None;
        }
        let v = completion_at_index(&self.modulus, &self.free, self.next);
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Completions {}

pub fn enumerate_completions(m: &FactoredModulus) -> Result<Completions> {
    if m.psi() > MAX_ENUMERATION_PSI {
        return Err(Error::EnumerationTooLarge {
            psi: m.psi(),
            limit: MAX_ENUMERATION_PSI,
        });
    }
    Ok(Completions {
        modulus: m.clone(),
        free: free_indices(m),
        next: 0,
        total: 1u64 << m.psi(),
    })
}

/// The Littlewood completion `J + V`.
pub fn complete(j: &TernarySequence, v: &TernarySequence) -> Result<TernarySequence> {
    if j.kind != SequenceKind::Character {
        return Err(Error::WrongKind {
            expected: "character",
            found: j.kind.as_str(),
        });
    }
    if v.kind != SequenceKind::Completion {
        return Err(Error::WrongKind {
            expected: "completion",
            found: v.kind.as_str(),
        });
    }
    if j.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: j.len(),
            right: v.len(),
        });
    }
    let mut coeffs = Vec::with_capacity(j.len());
    for (index, (&a, &b)) in j.coeffs.iter().zip(&v.coeffs).enumerate() {
        if a != 0 && b != 0 {
            return Err(Error::OverlappingSupport(index));
        }
        if a == 0 && b == 0 {
            return Err(Error::SupportViolation {
                kind: "littlewood",
                index,
            });
        }
        coeffs.push(a + b);
    }
    Ok(TernarySequence::from_parts_unchecked(
        coeffs,
        SequenceKind::Littlewood,
    ))
}

/// Convenience: factor `n` and build its character polynomial.
pub fn character_polynomial_for(n: u64) -> Result<(FactoredModulus, TernarySequence)> {
    let m = factor_odd_squarefree(n)?;
    let j = character_polynomial(&m);
    Ok((m, j))
}
