//! Memoryless binary-input channels and their log-likelihood ratios.
//!
//! Randomness is drawn per coordinate from a ChaCha stream keyed by the seed
//! and the coordinate index, so outputs are reproducible and independent of
//! how trials are scheduled.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::decoders::LlrVector;
use crate::error::{Error, Result};
use crate::matrices::{BitVector, RealVector, SupportSet};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelSpec {
    /// Binary symmetric channel with crossover probability `p ∈ (0, 1/2)`.
    Bsc { p: f64 },
    /// BPSK (`0 → +1`, `1 → −1`) plus Gaussian noise of deviation `sigma > 0`.
    Awgnc { sigma: f64 },
    /// Binary erasure channel with erasure probability `epsilon ∈ (0, 1)`.
    Bec { epsilon: f64 },
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ChannelSpec::Bsc { p } => p > 0.0 && p < 0.5,
            ChannelSpec::Awgnc { sigma } => sigma > 0.0 && sigma.is_finite(),
            ChannelSpec::Bec { epsilon } => epsilon > 0.0 && epsilon < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Channel(format!("{self} is out of range")))
        }
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelSpec::Bsc { p } => write!(f, "bsc:{p}"),
            ChannelSpec::Awgnc { sigma } => write!(f, "awgnc:{sigma}"),
            ChannelSpec::Bec { epsilon } => write!(f, "bec:{epsilon}"),
        }
    }
}

/// Parses `bsc:p`, `awgnc:sigma` or `bec:eps`.
impl FromStr for ChannelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) =
            s.split_once(':').ok_or_else(|| Error::Channel(format!("expected kind:value, got `{s}`")))?;
        let x: f64 = value.trim().parse().map_err(|_| Error::Channel(format!("bad parameter `{value}`")))?;
        let spec = match kind.trim().to_ascii_lowercase().as_str() {
            "bsc" => ChannelSpec::Bsc { p: x },
            "awgnc" | "awgn" => ChannelSpec::Awgnc { sigma: x },
            "bec" => ChannelSpec::Bec { epsilon: x },
            other => return Err(Error::Channel(format!("unknown channel `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "values", rename_all = "snake_case")]
pub enum Received {
    Bits(BitVector),
    Reals(Vec<f64>),
    /// `None` marks an erasure.
    Erasures(Vec<Option<u8>>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelOutput {
    pub received: Received,
    /// Flipped positions (BSC), hard-decision errors (AWGNC) or erasures (BEC).
    pub errors: SupportSet,
    pub seed: u64,
}

/// SplitMix64 finalizer, used to derive independent seeds.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn coordinate_rng(seed: u64, coord: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(coord as u64);
    rng
}

pub fn transmit(x: &BitVector, ch: &ChannelSpec, seed: u64) -> Result<ChannelOutput> {
    ch.validate()?;
    let n = x.len();
    let mut errors = Vec::new();
    let received = match *ch {
        ChannelSpec::Bsc { p } => {
            let bits = (0..n)
                .map(|i| {
                    let flip = coordinate_rng(seed, i).random_bool(p);
                    if flip {
                        errors.push(i);
                    }
                    x[i] ^ u8::from(flip)
                })
                .collect();
            Received::Bits(BitVector(bits))
        }
        ChannelSpec::Awgnc { sigma } => {
            let ys = (0..n)
                .map(|i| {
                    let noise: f64 = coordinate_rng(seed, i).sample(StandardNormal);
                    let sent = if x[i] == 0 { 1.0 } else { -1.0 };
                    let y = sent + sigma * noise;
                    if (y < 0.0) != (x[i] == 1) {
                        errors.push(i);
                    }
                    y
                })
                .collect();
            Received::Reals(ys)
        }
        ChannelSpec::Bec { epsilon } => {
            let obs = (0..n)
                .map(|i| {
                    if coordinate_rng(seed, i).random_bool(epsilon) {
                        errors.push(i);
                        None
                    } else {
                        Some(x[i])
                    }
                })
                .collect();
            Received::Erasures(obs)
        }
    };
    Ok(ChannelOutput { received, errors: SupportSet::new(n, errors)?, seed })
}

fn exact(v: f64) -> Result<Rational> {
    Rational::from_f64(v).ok_or_else(|| Error::Channel(format!("non-finite value {v}")))
}

/// `λ_i = log(P(y_i|0)/P(y_i|1))`: `±ln((1−p)/p)` on the BSC and `2y/σ²` on
/// the AWGNC, converted exactly from the binary floating-point values.
pub fn llr(out: &ChannelOutput, ch: &ChannelSpec) -> Result<LlrVector> {
    match (&out.received, ch) {
        (Received::Bits(bits), ChannelSpec::Bsc { p }) => {
            let l = exact(((1.0 - p) / p).ln())?;
            Ok(bits.iter().map(|&b| if b == 0 { l.clone() } else { -&l }).collect())
        }
        (Received::Reals(ys), ChannelSpec::Awgnc { sigma }) => {
            let scale = Rational::from_integer(2) / exact(*sigma)?.square();
            ys.iter().map(|&y| Ok(&scale * &exact(y)?)).collect::<Result<Vec<_>>>().map(RealVector)
        }
        (_, ChannelSpec::Bec { .. }) => {
            Err(Error::Channel("erasures have no finite LLR; use the peeling decoder".into()))
        }
        _ => Err(Error::Channel("channel output does not match the channel kind".into())),
    }
}

/// BSC LLRs with the magnitude scaled to 1: `+1` for a received 0, `−1` for a 1.
/// Positive scaling leaves every LP and ML decision unchanged.
pub fn unit_bsc_llr(bits: &BitVector) -> LlrVector {
    bits.iter().map(|&b| Rational::from_integer(if b == 0 { 1 } else { -1 })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn parsing_and_validation() {
        assert_eq!("bsc:0.1".parse::<ChannelSpec>().unwrap(), ChannelSpec::Bsc { p: 0.1 });
        assert_eq!("awgnc:0.5".parse::<ChannelSpec>().unwrap(), ChannelSpec::Awgnc { sigma: 0.5 });
        assert_eq!("bec:0.3".parse::<ChannelSpec>().unwrap(), ChannelSpec::Bec { epsilon: 0.3 });
        for bad in ["bsc:0.5", "bsc:0", "awgnc:-1", "bec:1", "foo:0.1", "bsc", "bsc:x"] {
            assert!(bad.parse::<ChannelSpec>().is_err(), "{bad}");
        }
        assert_eq!(ChannelSpec::Bsc { p: 0.1 }.to_string(), "bsc:0.1");
    }

    #[test]
    fn deterministic_given_seed() {
        let x = BitVector::zeros(40);
        for ch in [ChannelSpec::Bsc { p: 0.2 }, ChannelSpec::Awgnc { sigma: 0.9 }, ChannelSpec::Bec { epsilon: 0.3 }] {
            let a = transmit(&x, &ch, 7).unwrap();
            let b = transmit(&x, &ch, 7).unwrap();
            assert_eq!(a, b);
            assert_ne!(a, transmit(&x, &ch, 8).unwrap());
        }
        let out = transmit(&x, &ChannelSpec::Bsc { p: 0.2 }, 7).unwrap();
        let Received::Bits(bits) = &out.received else { panic!() };
        assert_eq!(bits.support(), out.errors);
    }

    #[test]
    fn erasures_never_flip() {
        let x = BitVector(vec![0, 1, 0, 1, 1, 0, 0, 1]);
        for seed in 0..50 {
            let out = transmit(&x, &ChannelSpec::Bec { epsilon: 0.5 }, seed).unwrap();
            let Received::Erasures(obs) = &out.received else { panic!() };
            for (i, o) in obs.iter().enumerate() {
                match o {
                    Some(b) => assert_eq!(*b, x[i]),
                    None => assert!(out.errors.contains(i)),
                }
            }
        }
    }

    #[test]
    fn low_noise_preserves_signs() {
        let x = BitVector(vec![0, 1, 1, 0, 1]);
        for trial in 0..1000 {
            let out = transmit(&x, &ChannelSpec::Awgnc { sigma: 1e-3 }, mix_seed(3, trial)).unwrap();
            let Received::Reals(ys) = &out.received else { panic!() };
            for (y, &b) in ys.iter().zip(x.iter()) {
                assert_eq!(*y > 0.0, b == 0);
            }
        }
    }

    #[test]
    fn flip_rate_matches_p() {
        let p = 0.1;
        let n = 100;
        let trials = 1000;
        let x = BitVector::zeros(n);
        let flips: usize =
            (0..trials).map(|t| transmit(&x, &ChannelSpec::Bsc { p }, mix_seed(11, t)).unwrap().errors.len()).sum();
        let uses = (n as u64 * trials) as f64;
        let rate = flips as f64 / uses;
        let se = (p * (1.0 - p) / uses).sqrt();
        assert!((rate - p).abs() < 3.0 * se, "rate {rate}");
    }

    #[test]
    fn llr_values() {
        let ch = ChannelSpec::Bsc { p: 0.1 };
        let out =
            ChannelOutput { received: Received::Bits(BitVector(vec![0, 1])), errors: SupportSet::empty(2), seed: 0 };
        let l = llr(&out, &ch).unwrap();
        assert!(l[0].is_positive());
        assert_eq!(l[1], -&l[0]);
        assert!((l[0].to_f64() - 9f64.ln()).abs() < 1e-12);
        assert_eq!(unit_bsc_llr(&BitVector(vec![0, 1])), RealVector(vec![qi(1), qi(-1)]));

        let ch = ChannelSpec::Awgnc { sigma: 0.5 };
        let out = ChannelOutput { received: Received::Reals(vec![0.0, 0.25]), errors: SupportSet::empty(2), seed: 0 };
        assert_eq!(llr(&out, &ch).unwrap(), RealVector(vec![qi(0), qi(2)]));

        let ch = ChannelSpec::Bec { epsilon: 0.5 };
        let out = transmit(&BitVector::zeros(3), &ch, 1).unwrap();
        assert!(llr(&out, &ch).is_err());
    }
}
