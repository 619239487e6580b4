//! Monte Carlo mining races: `s` synchronized miners with disjoint nonce
//! partitions, each hashing until personal success or nonce exhaustion.
//!
//! Two modes are distributionally equivalent under the Random Oracle Model:
//!
//! * `RealHash` — double SHA-256 over `data_j ∥ nonce`, succeeding at the
//!   first digest with at least `d` leading zero bits (big-endian);
//! * `GeometricSampling` — draw the first-success round directly from the
//!   geometric distribution with success probability `2^-d`.
//!
//! Per-miner data blocks encode `(seed, race_index, miner_index)` so no hash
//! input is ever used twice, across miners or races.

use crate::numerics;
use crate::par;
use crate::powmodel::MiningDesign;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use sha2::{Digest, Sha256};
use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimulatorError {
    #[error("nonce partition of size λ = {0} is too large for RealHash mode")]
    RealHashPartitionTooLarge(BigUint),
    #[error("difficulty {0} is not usable in mode {1:?}")]
    BadDifficulty(u32, Mode),
    #[error("campaign file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Simulation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Double SHA-256 of `data_j ∥ nonce`.
    RealHash,
    /// Sample the first-success round from the geometric distribution.
    GeometricSampling,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::RealHash => "realhash",
            Mode::GeometricSampling => "geometric",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "realhash" => Ok(Mode::RealHash),
            "geometric" => Ok(Mode::GeometricSampling),
            other => Err(format!("unknown mode {other:?} (expected realhash|geometric)")),
        }
    }
}

// Per-miner data block: seed ∥ race_index ∥ miner_index, big-endian.
const DATA_BLOCK_BYTES: usize = 24;
// Nonces are serialized in a fixed 16-byte big-endian field (r ≤ 128).
const NONCE_BYTES: usize = 16;

/// Configuration of one campaign of races.
#[derive(Debug, Clone)]
pub struct RaceConfig {
    pub design: MiningDesign,
    pub mode: Mode,
    pub seed: u64,
    /// Bits of the per-miner data prefix (hash input bits minus nonce bits).
    pub data_bits: u32,
}

impl RaceConfig {
    pub fn new(design: MiningDesign, mode: Mode, seed: u64) -> Self {
        Self {
            design,
            mode,
            seed,
            data_bits: (DATA_BLOCK_BYTES * 8) as u32,
        }
    }

    /// Default race count: ⌊10000/s⌋.
    pub fn default_race_count(&self) -> u64 {
        10_000 / self.design.s() as u64
    }
}

///// One miner's result: 0-based success round within its own partition
/// (`0 ≤ k ≤ λ`), or exhaustion of the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinerOutcome {
    Success(u64),
    Failure,
}

impl MinerOutcome {
    pub fn success_round(self) -> Option<u64> {
        match self {
            MinerOutcome::Success(k) => Some(k),
            MinerOutcome::Failure => None,
        }
    }
}

/// Outcome of one race: all per-miner entries plus the derived winner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaceOutcome {
    pub per_miner: Vec<MinerOutcome>,
    /// `k_min + 1` over successful miners, or `None` if every miner failed.
    pub winner_rounds: Option<u64>,
}

impl RaceOutcome {
    fn from_entries(per_miner: Vec<MinerOutcome>) -> Self {
        let winner_rounds = per_miner
            .iter()
            .filter_map(|m| m.success_round())
            .min()
            .map(|k| k + 1);
        RaceOutcome {
            per_miner,
            winner_rounds,
        }
    }

    pub fn is_failure(&self) -> bool {
        self.winner_rounds.is_none()
    }
}

/// A recorded campaign: configuration plus every race outcome in order.
#[derive(Debug, Clone)]
pub struct CampaignRecord {
    pub config: RaceConfig,
    pub races: Vec<RaceOutcome>,
}

impl CampaignRecord {
    pub fn race_count(&self) -> u64 {
        self.races.len() as u64
    }
}

/// Disjoint nonce ranges `[j·(λ+1), (j+1)·(λ+1))` for the `s` miners. Each
/// miner owns λ+1 nonces, one per round `0..=λ`, matching the race pmf
/// support and the failure exponent `s·(λ+1)`.
pub fn partition_nonces(design: &MiningDesign) -> Vec<(BigUint, BigUint)> {
    let width = design.lambda() + 1u32;
    (0..design.s() as u64)
        .map(|j| (&width * j, &width * (j + 1)))
        .collect()
}

fn data_block(seed: u64, race_index: u64, miner_index: u32) -> [u8; DATA_BLOCK_BYTES] {
    let mut block = [0u8; DATA_BLOCK_BYTES];
    block[..8].copy_from_slice(&seed.to_be_bytes());
    block[8..16].copy_from_slice(&race_index.to_be_bytes());
    block[16..24].copy_from_slice(&(miner_index as u64).to_be_bytes());
    block
}

fn double_sha256(bytes: &[u8]) -> [u8; 32] {
    let first = Sha256::digest(bytes);
    let second = Sha256::digest(first);
    second.into()
}

/// Leading zero bits of a digest read as a big-endian bit string.
pub fn leading_zero_bits(digest: &[u8; 32]) -> u32 {
    let mut count = 0;
    for byte in digest {
        if *byte == 0 {
            count += 8;
        } else {
            count += byte.leading_zeros();
            break;
        }
    }
    count
}

// Geometric first-success trial count K ≥ 1 with success probability 2^-d,
// via the inverse CDF. u is uniform on (0, 1].
fn geometric_k(u: f64, ln_base: f64) -> f64 {
    (u.ln() / ln_base).floor() + 1.0
}

fn mine_geometric(design: &MiningDesign, data: &[u8; DATA_BLOCK_BYTES]) -> MinerOutcome {
    // Deterministic per-(seed, race, miner) stream derived from the data
    // block, independent of platform.
    let mut seed_bytes = [0u8; 32];
    let mut h = Sha256::new();
    h.update(b"powcalc.geometric.v1");
    h.update(data);
    seed_bytes.copy_from_slice(&h.finalize());
    let mut rng = ChaCha12Rng::from_seed(seed_bytes);
    let u = 1.0 - rng.gen::<f64>(); // (0, 1]
    let ln_base = numerics::ln_one_minus_pow2(design.d()).expect("valid difficulty");
    let k_trials = geometric_k(u, ln_base);
    // λ+1 tries per miner (rounds 0..=λ).
    let lambda_f = design.lambda().to_f64().unwrap_or(f64::INFINITY);
    if k_trials <= lambda_f + 1.0 {
        MinerOutcome::Success(k_trials as u64 - 1)
    } else {
        MinerOutcome::Failure
    }
}

// RealHash partitions are iterated nonce by nonce; cap the work at a desk
// scale.
const REALHASH_MAX_LAMBDA: u64 = 1 << 26;

fn mine_realhash(
    miner_index: u32,
    design: &MiningDesign,
    data: &[u8; DATA_BLOCK_BYTES],
) -> Result<MinerOutcome, SimulatorError> {
    let lambda = design
        .lambda()
        .to_u64()
        .filter(|l| *l <= REALHASH_MAX_LAMBDA)
        .ok_or_else(|| SimulatorError::RealHashPartitionTooLarge(design.lambda().clone()))?;
    let start = ((design.lambda() + 1u32) * miner_index)
        .to_u128()
        .ok_or_else(|| SimulatorError::RealHashPartitionTooLarge(design.lambda().clone()))?;
    let mut input = [0u8; DATA_BLOCK_BYTES + NONCE_BYTES];
    input[..DATA_BLOCK_BYTES].copy_from_slice(data);
    for k in 0..=lambda {
        let nonce = start + k as u128;
        input[DATA_BLOCK_BYTES..].copy_from_slice(&nonce.to_be_bytes());
        let digest = double_sha256(&input);
        if leading_zero_bits(&digest) >= design.d() {
            return Ok(MinerOutcome::Success(k));
        }
    }
    Ok(MinerOutcome::Failure)
}

/// Mine one miner's partition to completion.
pub fn mine_single(
    miner_index: u32,
    race_data: (u64, u64),
    design: &MiningDesign,
    mode: Mode,
) -> Result<MinerOutcome, SimulatorError> {
    let (seed, race_index) = race_data;
    let data = data_block(seed, race_index, miner_index);
    match mode {
        Mode::GeometricSampling => Ok(mine_geometric(design, &data)),
        Mode::RealHash => mine_realhash(miner_index, design, &data),
    }
}

/// Run one race: every miner mines its partition to personal completion.
pub fn run_race(config: &RaceConfig, race_index: u64) -> Result<RaceOutcome, SimulatorError> {
    let mut per_miner = Vec::with_capacity(config.design.s() as usize);
    for j in 0..config.design.s() {
        per_miner.push(mine_single(
            j,
            (config.seed, race_index),
            &config.design,
            config.mode,
        )?);
    }
    Ok(RaceOutcome::from_entries(per_miner))
}

fn campaign_with(
    config: &RaceConfig,
    race_count: u64,
    parallel: bool,
) -> Result<CampaignRecord, SimulatorError> {
    assert!(race_count >= 1, "a campaign needs at least one race");
    let indices: Vec<u64> = (0..race_count).collect();
    let run = |i: u64| run_race(config, i);
    let races = if parallel {
        par::map_collect(indices, run)
    } else {
        par::map_collect_seq(indices, run)
    };
    let races = races.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(CampaignRecord {
        config: config.clone(),
        races,
    })
}

/// Run `race_count` independent races; deterministic given the seed, and
/// identical whether races are fanned out across threads or not.
pub fn run_campaign(config: &RaceConfig, race_count: u64) -> Result<CampaignRecord, SimulatorError> {
    campaign_with(config, race_count, true)
}

/// Sequential reference implementation of [`run_campaign`].
pub fn run_campaign_seq(
    config: &RaceConfig,
    race_count: u64,
) -> Result<CampaignRecord, SimulatorError> {
    campaign_with(config, race_count, false)
}

// ---------------------------------------------------------------------------
// Campaign persistence: header "s r d seed mode race_count", then one race
// per line with s space-separated integers; Success(k) as k, Failure as -1.
// ---------------------------------------------------------------------------

pub fn write_campaign(record: &CampaignRecord, out: &mut impl Write) -> Result<(), SimulatorError> {
    let cfg = &record.config;
    writeln!(
        out,
        "{} {} {} {} {} {}",
        cfg.design.s(),
        cfg.design.r(),
        cfg.design.d(),
        cfg.seed,
        cfg.mode,
        record.races.len()
    )?;
    let mut line = String::new();
    for race in &record.races {
        line.clear();
        for (i, entry) in race.per_miner.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            match entry {
                MinerOutcome::Success(k) => line.push_str(&k.to_string()),
                MinerOutcome::Failure => line.push_str("-1"),
            }
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn read_campaign(input: &mut impl BufRead) -> Result<CampaignRecord, SimulatorError> {
    let bad = |m: String| SimulatorError::Format(m);
    let mut header = String::new();
    input.read_line(&mut header)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 {
        return Err(bad(format!(
            "header must have 6 fields (s r d seed mode race_count), got {}",
            fields.len()
        )));
    }
    let s: u32 = fields[0].parse().map_err(|e| bad(format!("s: {e}")))?;
    let r: u32 = fields[1].parse().map_err(|e| bad(format!("r: {e}")))?;
    let d: u32 = fields[2].parse().map_err(|e| bad(format!("d: {e}")))?;
    let seed: u64 = fields[3].parse().map_err(|e| bad(format!("seed: {e}")))?;
    let mode: Mode = fields[4].parse().map_err(SimulatorError::Format)?;
    let race_count: u64 = fields[5]
        .parse()
        .map_err(|e| bad(format!("race_count: {e}")))?;
    let design = MiningDesign::new(s, r, d).map_err(|e| bad(e.to_string()))?;
    let config = RaceConfig::new(design, mode, seed);
    let mut races = Vec::with_capacity(race_count as usize);
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut entries = Vec::with_capacity(s as usize);
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().map_err(|e| bad(format!("entry {tok:?}: {e}")))?;
            entries.push(if v < 0 {
                MinerOutcome::Failure
            } else {
                MinerOutcome::Success(v as u64)
            });
        }
        if entries.len() != s as usize {
            return Err(bad(format!(
                "race line has {} entries, expected s = {s}",
                entries.len()
            )));
        }
        races.push(RaceOutcome::from_entries(entries));
    }
    if races.len() as u64 != race_count {
        return Err(bad(format!(
            "header declares {race_count} races, file contains {}",
            races.len()
        )));
    }
    Ok(CampaignRecord { config, races })
}
