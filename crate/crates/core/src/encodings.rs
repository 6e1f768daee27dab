//! Level-indexed amplitude encodings and the maps from level to basis index.
//!
//! For a vector `α_0 .. α_{N-1}`, level `i` sits at
//! * one-hot: the single `1` at right offset `i`, integer `2^i`, on `N` qubits;
//! * binary: integer `i`, on `⌈log2 N⌉` qubits;
//! * staircase ("Edick"): `i` ones right-aligned, integer `2^i - 1`, on `N - 1` qubits.
//!
//! Wider registers pad with |0⟩ on the left, which leaves the indices unchanged.

use std::io::{BufRead, Write};

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::statevector::Statevector;

/// Stray probability tolerated outside the level positions by [`read_state`].
pub const STRAY_TOLERANCE: f64 = 1e-9;

const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EncodingKind {
    OneHot,
    Binary,
    Edick,
    /// Uniform superposition of all weight-`k` strings.
    Dicke(usize),
}

impl EncodingKind {
    fn name(&self) -> &'static str {
        match self {
            EncodingKind::OneHot => "one-hot",
            EncodingKind::Binary => "binary",
            EncodingKind::Edick => "edick",
            EncodingKind::Dicke(_) => "dicke",
        }
    }
}

/// `⌈log2 n⌉`, with `ceil_log2(1) == 0`.
pub fn ceil_log2(n: usize) -> usize {
    assert!(n > 0);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// Unit-norm coefficient list `α_0 .. α_{N-1}`, `N ≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector {
    alphas: Vec<Complex64>,
}

impl AmplitudeVector {
    pub fn new(alphas: Vec<Complex64>) -> Result<AmplitudeVector> {
        if alphas.len() < 2 {
            return Err(Error::InvalidLevels(alphas.len(), "need at least two levels"));
        }
        let norm: f64 = alphas.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(AmplitudeVector { alphas })
    }

    pub fn from_real(alphas: &[f64]) -> Result<AmplitudeVector> {
        AmplitudeVector::new(alphas.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(alphas: Vec<Complex64>) -> Result<AmplitudeVector> {
        let norm = alphas.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        AmplitudeVector::new(alphas.into_iter().map(|a| a / norm).collect())
    }

    pub fn uniform(n: usize) -> Result<AmplitudeVector> {
        AmplitudeVector::from_real(&vec![1.0 / (n as f64).sqrt(); n])
    }

    /// All weight on level `i`.
    pub fn level(n: usize, i: usize) -> Result<AmplitudeVector> {
        if i >= n {
            return Err(Error::LevelOutOfRange { level: i, limit: n });
        }
        let mut a = vec![0.0; n];
        a[i] = 1.0;
        AmplitudeVector::from_real(&a)
    }

    /// Random real vector with signed entries.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<AmplitudeVector> {
        loop {
            let a: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), 0.0))
                .collect();
            if a.iter().any(|x| x.norm() > 1e-3) {
                return AmplitudeVector::normalized(a);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn alphas(&self) -> &[Complex64] {
        &self.alphas
    }

    /// Reads one real per line, or `re,im` pairs. Blank lines and `#` comments
    /// are skipped. The result is normalized.
    pub fn read_from<R: BufRead>(reader: R) -> Result<AmplitudeVector> {
        let mut alphas = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |_| Error::Parse {
                line: i + 1,
                msg: format!("bad amplitude '{line}'"),
            };
            let value = match line.split_once(',') {
                Some((re, im)) => {
                    Complex64::new(re.trim().parse().map_err(bad)?, im.trim().parse().map_err(bad)?)
                }
                None => Complex64::new(line.parse().map_err(bad)?, 0.0),
            };
            alphas.push(value);
        }
        AmplitudeVector::normalized(alphas)
    }

    /// One real per line when every entry is real, `re,im` pairs otherwise.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let real = self.alphas.iter().all(|a| a.im == 0.0);
        for a in &self.alphas {
            if real {
                writeln!(w, "{}", a.re)?;
            } else {
                writeln!(w, "{},{}", a.re, a.im)?;
            }
        }
        Ok(())
    }
}

/// Fewest qubits that hold `n` levels of `kind`.
pub fn min_width(kind: EncodingKind, n: usize) -> usize {
    match kind {
        EncodingKind::OneHot => n,
        EncodingKind::Binary => ceil_log2(n).max(1),
        EncodingKind::Edick => n.saturating_sub(1).max(1),
        EncodingKind::Dicke(k) => k.max(1),
    }
}

/// Basis index of level `i` on a `width`-qubit register.
pub fn level_to_basis(kind: EncodingKind, i: usize, width: usize) -> Result<usize> {
    let limit = match kind {
        EncodingKind::OneHot => width,
        EncodingKind::Binary => 1usize.checked_shl(width as u32).unwrap_or(usize::MAX),
        EncodingKind::Edick => width + 1,
        EncodingKind::Dicke(_) => return Err(Error::NoLevelLayout(kind.name())),
    };
    if i >= limit {
        return Err(Error::LevelOutOfRange { level: i, limit });
    }
    Ok(match kind {
        EncodingKind::OneHot => 1 << i,
        EncodingKind::Binary => i,
        EncodingKind::Edick => (1 << i) - 1,
        EncodingKind::Dicke(_) => unreachable!(),
    })
}

fn check_width(kind: EncodingKind, n: usize, width: usize) -> Result<()> {
    let needed = min_width(kind, n);
    if width < needed {
        return Err(Error::WidthTooSmall { width, needed });
    }
    Ok(())
}

/// Places `v[i]` at each level's basis index. For `Dicke(k)` the vector is
/// ignored and the weight-`k` Dicke state on `width` qubits is returned.
pub fn build_state(kind: EncodingKind, v: &AmplitudeVector, width: usize) -> Result<Statevector> {
    if let EncodingKind::Dicke(k) = kind {
        return dicke_state(width, k);
    }
    check_width(kind, v.len(), width)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << width];
    for (i, &a) in v.alphas().iter().enumerate() {
        amps[level_to_basis(kind, i, width)?] = a;
    }
    Statevector::from_amplitudes(amps)
}

/// `C(n,k)^{-1/2}` on every `n`-bit string of Hamming weight `k`.
pub fn dicke_state(n: usize, k: usize) -> Result<Statevector> {
    if k > n {
        return Err(Error::LevelOutOfRange {
            level: k,
            limit: n + 1,
        });
    }
    let amp = Complex64::new(1.0 / binomial(n, k).sqrt(), 0.0);
    let amps = (0..1usize << n)
        .map(|x| {
            if x.count_ones() as usize == k {
                amp
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    Statevector::from_amplitudes(amps)
}

/// `C(n, k)` as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Extracts `α_i` from the level positions of `s`. Fails when more than
/// [`STRAY_TOLERANCE`] of the probability sits elsewhere.
pub fn read_state(kind: EncodingKind, s: &Statevector, n: usize) -> Result<AmplitudeVector> {
    if let EncodingKind::Dicke(_) = kind {
        return Err(Error::NoLevelLayout(kind.name()));
    }
    let width = s.num_qubits();
    check_width(kind, n, width)?;
    let positions = (0..n)
        .map(|i| level_to_basis(kind, i, width))
        .collect::<Result<Vec<_>>>()?;
    let alphas: Vec<Complex64> = positions.iter().map(|&p| s.amplitude(p)).collect();
    let on_levels: f64 = alphas.iter().map(|a| a.norm_sqr()).sum();
    let stray = (s.norm_sqr() - on_levels).max(0.0);
    if stray > STRAY_TOLERANCE {
        return Err(Error::StrayMass { mass: stray });
    }
    Ok(AmplitudeVector { alphas })
}

/// True when `x` is a staircase pattern `0..01..1` (including zero).
pub fn is_edick_pattern(x: usize) -> bool {
    x & (x.wrapping_add(1)) == 0
}
