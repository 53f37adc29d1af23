use std::time::Instant;

use lpdecode::channels::mix_seed;
use lpdecode::decoders::{cc_lpd, cc_mld, cs_lpd, cs_opt};
use lpdecode::experiments::{
    bridge_trial, certified_constant, guarantee_trial, peel_trial, premise_admits, random_peel_instance,
    random_support, run_trials, sandwich_trial, translate_trial, trial_rng,
};
use lpdecode::matrices::BitVector;
use lpdecode::nsp::{bridge_map, check_nsp_k, check_nsp_support, NormPair};
use lpdecode::pseudoweight::{
    enumerate_extreme_rays, min_maxfrac_weight_lp, min_over_rays, PseudoWeightKind, PseudoWeightReport, RAY_GUARD,
};
use lpdecode::{channels, Error, RealVector, SupportSet};
use rand::Rng;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::output::{record, write_rows, write_single, OutFormat};
use crate::{load_matrix, Command, CsDecoder, Failure, Norm, OutputArgs};

fn parse_vector(s: &str) -> Result<RealVector, Failure> {
    s.split([',', ' '])
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse().map_err(|e: lpdecode::rational::ParseRationalError| Failure::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map(RealVector)
}

fn parse_indices(s: &str) -> Result<Vec<usize>, Failure> {
    s.split([',', ' '])
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("bad index `{t}`"))))
        .collect()
}

fn parse_bits(s: &str) -> Result<BitVector, Failure> {
    parse_indices(s)?
        .into_iter()
        .map(|b| {
            u8::try_from(b).ok().filter(|&b| b <= 1).ok_or_else(|| Failure::Usage(format!("bit {b} is not 0 or 1")))
        })
        .collect::<Result<Vec<u8>, _>>()
        .map(BitVector)
}

/// Trial index followed by the experiment's own fields.
#[derive(Serialize)]
struct Indexed<T> {
    trial: usize,
    #[serde(flatten)]
    row: T,
}

struct Run<'a> {
    task: &'static str,
    matrix: &'a str,
    output: &'a OutputArgs,
    started: Instant,
}

impl<'a> Run<'a> {
    fn new(task: &'static str, matrix: &'a str, output: &'a OutputArgs) -> Self {
        Run { task, matrix, output, started: Instant::now() }
    }

    fn single<T: Serialize>(&self, row: &T) -> Result<(), Failure> {
        let rec = record(self.task, self.matrix, row)?;
        write_single(rec, self.output.out_format.unwrap_or(OutFormat::Json), self.output.out.as_deref())?;
        Ok(())
    }

    /// Writes the rows, reports the summary on standard error and fails
    /// when any row is a violation.
    fn rows(&self, rows: Vec<Map<String, Value>>, violations: usize, summary: String) -> Result<(), Failure> {
        write_rows(&rows, self.output.out_format.unwrap_or(OutFormat::Csv), self.output.out.as_deref())?;
        eprintln!("{}: {summary} ({:.2}s)", self.task, self.started.elapsed().as_secs_f64());
        if violations > 0 {
            return Err(Failure::Violations(violations));
        }
        Ok(())
    }

    fn record<T: Serialize>(&self, row: &T) -> Result<Map<String, Value>, Failure> {
        Ok(record(self.task, self.matrix, row)?)
    }
}

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::CertifyNsp { matrix, k, support, c, strict, output } => {
            let h = load_matrix(&matrix.matrix, matrix.format)?;
            let run = Run::new("certify-nsp", &matrix.matrix, &output);
            #[derive(Serialize)]
            struct Row {
                #[serde(skip_serializing_if = "Option::is_none")]
                k: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                support: Option<SupportSet>,
                #[serde(flatten)]
                report: lpdecode::nsp::NspReport,
            }
            let row = match (k, support) {
                (Some(k), _) => Row { k: Some(k), support: None, report: check_nsp_k(&h, k, &c, strict)? },
                (None, Some(s)) => {
                    let s = SupportSet::new(h.cols(), parse_indices(&s)?)?;
                    let report = check_nsp_support(&h, &s, &c, strict)?;
                    Row { k: None, support: Some(s), report }
                }
                (None, None) => unreachable!("clap requires --k or --support"),
            };
            run.single(&row)
        }

        Command::Pseudoweight { vector, output } => {
            let w = parse_vector(&vector)?;
            let run = Run::new("pseudoweight", "", &output);
            #[derive(Serialize)]
            struct Row {
                vector: RealVector,
                #[serde(flatten)]
                report: PseudoWeightReport,
            }
            run.single(&Row { report: PseudoWeightReport::of(&w)?, vector: w })
        }

        Command::MinPseudoweight { matrix, kind, output } => {
            let h = load_matrix(&matrix.matrix, matrix.format)?;
            let run = Run::new("min-pseudoweight", &matrix.matrix, &output);
            let kinds: Vec<PseudoWeightKind> = match kind {
                Some(k) => vec![k],
                None if h.cols() > RAY_GUARD => {
                    eprintln!("block length {} exceeds the ray guard; reporting maxfrac only", h.cols());
                    vec![PseudoWeightKind::MaxFrac]
                }
                None => PseudoWeightKind::ALL.to_vec(),
            };
            let rays = if kinds.iter().any(|&k| k != PseudoWeightKind::MaxFrac) {
                Some(enumerate_extreme_rays(&h)?)
            } else {
                None
            };
            let mut row = Map::new();
            for k in kinds {
                let value = match &rays {
                    Some(rays) => min_over_rays(rays, k)?,
                    None => min_maxfrac_weight_lp(&h)?,
                };
                row.insert(k.name().into(), serde_json::to_value(value).map_err(std::io::Error::other)?);
            }
            if let Some(rays) = &rays {
                row.insert("extreme_rays".into(), Value::from(rays.len()));
            }
            run.single(&row)
        }

        Command::DecodeCs { matrix, syndrome, signal, decoder, k, output } => {
            let h = load_matrix(&matrix.matrix, matrix.format)?;
            let run = Run::new("decode-cs", &matrix.matrix, &output);
            let signal = signal.as_deref().map(parse_vector).transpose()?;
            let s = match (&syndrome, &signal) {
                (Some(s), _) => parse_vector(s)?,
                (None, Some(e)) => h.syndrome_real(e)?,
                (None, None) => unreachable!("clap requires --syndrome or --signal"),
            };
            let result = match decoder {
                CsDecoder::Lpd => cs_lpd(&h, &s)?,
                CsDecoder::Opt => cs_opt(&h, &s, k)?,
            };
            #[derive(Serialize)]
            struct Row {
                decoder: &'static str,
                syndrome: RealVector,
                #[serde(flatten)]
                result: lpdecode::decoders::DecodeResult,
                #[serde(skip_serializing_if = "Option::is_none")]
                recovered: Option<bool>,
            }
            let recovered = signal.map(|e| result.is_success() && result.estimate.as_ref() == Some(&e));
            let decoder = if decoder == CsDecoder::Lpd { "cs_lpd" } else { "cs_opt" };
            run.single(&Row { decoder, syndrome: s, result, recovered })
        }

        Command::DecodeCc { matrix, llr, received, channel, trials, seed, output } => {
            let h = load_matrix(&matrix.matrix, matrix.format)?;
            let run = Run::new("decode-cc", &matrix.matrix, &output);
            if let Some(ch) = channel {
                let rows = run_trials(trials as usize, seed.seed, |t, s| sandwich_trial(&h, &ch, t, s))?;
                let violations = rows.iter().filter(|r| r.violated).count();
                let success = rows.iter().filter(|r| r.lpd == lpdecode::decoders::DecodeStatus::Success).count();
                let recs = rows.iter().map(|r| run.record(r)).collect::<Result<_, _>>()?;
                return run.rows(
                    recs,
                    violations,
                    format!("{success}/{trials} LP successes, {violations} sandwich violations"),
                );
            }
            let lambda = match (llr, received) {
                (Some(l), _) => parse_vector(&l)?,
                (None, Some(b)) => channels::unit_bsc_llr(&parse_bits(&b)?),
                (None, None) => unreachable!("clap requires an input"),
            };
            #[derive(Serialize)]
            struct Row {
                llr: RealVector,
                lpd: lpdecode::decoders::DecodeResult,
                #[serde(skip_serializing_if = "Option::is_none")]
                mld: Option<lpdecode::decoders::DecodeResult>,
            }
            let lpd = cc_lpd(&h, &lambda)?;
            let mld = match cc_mld(&h, &lambda) {
                Ok(r) => Some(r),
                Err(Error::GuardExceeded { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            run.single(&Row { llr: lambda, lpd, mld })
        }

        Command::BridgeCheck { matrix, vector, trials, seed, output } => {
            let h = load_matrix(&matrix.matrix, matrix.format)?;
            let run = Run::new("bridge-check", &matrix.matrix, &output);
            if let Some(v) = vector {
                let report = bridge_map(&h, &parse_vector(&v)?)?;
                let sound = report.is_sound();
                run.single(&report)?;
                return if sound { Ok(()) } else { Err(Failure::Violations(1)) };
            }
            let basis = h.real_nullspace_basis();
            if basis.is_empty() {
                return Err(Failure::Usage("the real nullspace is trivial; nothing to map".into()));
            }
            let rows = run_trials(trials as usize, seed.seed, |t, s| bridge_trial(&h, &basis, 0, t, s))?;
            let rows: Vec<_> = rows.into_iter().flatten().collect();
            let violations = rows.iter().filter(|r| r.violated()).count();
            let recs = rows.iter().map(|r| run.record(r)).collect::<Result<_, _>>()?;
            run.rows(recs, violations, format!("{} vectors, {violations} violations", rows.len()))
        }

        Command::Translate { matrix, k, trials, signals, seed, output } => {
            let h = load_matrix(&matrix.matrix, matrix.format)?;
            if k == 0 || k > h.cols() {
                return Err(Failure::Usage(format!("--k must be in 1..={}", h.cols())));
            }
            let run = Run::new("translate", &matrix.matrix, &output);
            let rows = run_trials(trials as usize, seed.seed, |t, s| {
                let flips = random_support(&mut trial_rng(mix_seed(s, 1)), h.cols(), k);
                Ok(Indexed { trial: t, row: translate_trial(&h, &flips, signals, s)? })
            })?;
            let violations = rows.iter().filter(|r| r.row.violated()).count();
            let corrected = rows.iter().filter(|r| r.row.cc_corrects).count();
            let recs = rows.iter().map(|r| run.record(r)).collect::<Result<_, _>>()?;
            let satisfied = rows.len() - violations;
            run.rows(
                recs,
                violations,
                format!("{satisfied}/{trials} point-wise implications satisfied ({corrected} flip sets corrected)"),
            )
        }

        Command::Guarantee { matrix, k, norm, c, cprime, trials, seed, output } => {
            let h = load_matrix(&matrix.matrix, matrix.format)?;
            let run = Run::new("guarantee", &matrix.matrix, &output);
            let pairs = match norm {
                Some(Norm::L1l1) => vec![NormPair::L1L1],
                Some(Norm::L2l1) => vec![NormPair::L2L1],
                Some(Norm::Linfl1) => vec![NormPair::LinfL1],
                None => vec![NormPair::L1L1, NormPair::L2L1, NormPair::LinfL1],
            };
            let mut recs = Vec::new();
            let mut violations = 0;
            let mut notes = Vec::new();
            for (p, pair) in pairs.into_iter().enumerate() {
                let certified = match certified_constant(&h, pair, k) {
                    Ok(c) => c,
                    Err(e @ Error::GuardExceeded { .. }) => {
                        notes.push(format!("{pair:?} skipped: {e}"));
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                };
                let requested = if pair == NormPair::L1L1 { c.clone() } else { cprime.clone() };
                let constant = match (certified, requested) {
                    (Some(cert), Some(req)) if premise_admits(pair, k, &req, &cert) => req,
                    (Some(cert), None) => cert,
                    (cert, req) => {
                        let shown = |x: Option<lpdecode::Rational>| x.map_or("none".to_string(), |v| v.to_string());
                        notes.push(format!(
                            "{pair:?} skipped: premise not certified (requested {}, certified {})",
                            shown(req),
                            shown(cert)
                        ));
                        continue;
                    }
                };
                let rows = run_trials(trials as usize, mix_seed(seed.seed, p as u64), |t, s| {
                    guarantee_trial(&h, pair, k, &constant, t, s)
                })?;
                let v = rows.iter().filter(|r| r.violated).count();
                violations += v;
                notes.push(format!("{pair:?} with constant {constant}: {v} violations"));
                for r in &rows {
                    recs.push(run.record(r)?);
                }
            }
            run.rows(recs, violations, notes.join("; "))
        }

        Command::PeelEquiv { matrix, k, trials, seed, output } => {
            let h = matrix.matrix.as_deref().map(|m| load_matrix(m, matrix.format)).transpose()?;
            let id = matrix.matrix.clone().unwrap_or_else(|| "random".into());
            if let (Some(h), Some(k)) = (&h, k) {
                if k == 0 || k > h.cols() {
                    return Err(Failure::Usage(format!("--k must be in 1..={}", h.cols())));
                }
            }
            let run = Run::new("peel-equiv", &id, &output);
            let rows = run_trials(trials as usize, seed.seed, |t, s| {
                let mut rng = trial_rng(mix_seed(s, 1));
                let (g, support) = match &h {
                    Some(h) => {
                        let size = k.unwrap_or_else(|| rng.random_range(1..=h.cols()));
                        (h.clone(), random_support(&mut rng, h.cols(), size))
                    }
                    None => random_peel_instance(&mut rng),
                };
                peel_trial(&g, &support, t, s)
            })?;
            #[derive(Serialize)]
            struct Row<'a> {
                #[serde(flatten)]
                row: &'a lpdecode::experiments::PeelRow,
                agree: bool,
            }
            let violations = rows.iter().filter(|r| !r.agree() || !r.values_correct).count();
            let stuck = rows.iter().filter(|r| !r.bec_resolved).count();
            let recs = rows.iter().map(|r| run.record(&Row { row: r, agree: r.agree() })).collect::<Result<_, _>>()?;
            run.rows(recs, violations, format!("{trials} pairs, {stuck} stuck, {violations} disagreements"))
        }
    }
}
