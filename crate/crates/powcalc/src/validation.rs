//! Statistical validation of the analytic race model against Monte Carlo
//! campaigns: per-campaign empirical statistics, rounds/tail error metrics,
//! the (s, r, d, μ, T) dispute-error database, and conjunctive queries over
//! it.

use crate::par;
use crate::powmodel::{self, MiningDesign, PowModelError, ProbResult};
use crate::simulator::{self, CampaignRecord, Mode, RaceConfig, RaceOutcome, SimulatorError};
use std::collections::HashMap;
use std::io::{self, BufRead, Write};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ValidationError {
    #[error("campaign is empty")]
    EmptyCampaign,
    #[error("campaign has no successful race")]
    NoSuccesses,
    #[error(transparent)]
    Model(#[from] PowModelError),
    #[error(transparent)]
    Simulator(#[from] SimulatorError),
    #[error("database file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

// ---------------------------------------------------------------------------
// Per-campaign empirical statistics
// ---------------------------------------------------------------------------

/// Empirical counterparts of the analytic race variables for one campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalStats {
    pub race_count: u64,
    /// Number of successful races, `l`.
    pub success_count: u64,
    /// Mean winner rounds over successful races; `None` when `l = 0`.
    pub mean_winner_rounds: Option<f64>,
    /// `(race_count − l) / race_count`.
    pub failure_freq: f64,
    /// Fraction of successes with `T·rds > th`; `None` when `l = 0`.
    pub time_gt_freq: Option<f64>,
    /// Fraction of successes with `T·rds < th'`; `None` when `l = 0`.
    pub time_lt_freq: Option<f64>,
    /// Fraction of races (all races) in which at least two miners report a
    /// hash count (1-based) of at most `⌊μ/T⌋`.
    pub dispute_freq: f64,
}

// The round index of the second-fastest successful miner, if at least two
// miners succeeded.
fn second_fastest(race: &RaceOutcome) -> Option<u64> {
    let (mut best, mut second) = (None::<u64>, None::<u64>);
    for entry in &race.per_miner {
        if let Some(k) = entry.success_round() {
            if best.map_or(true, |b| k < b) {
                second = best;
                best = Some(k);
            } else if second.map_or(true, |s| k < s) {
                second = Some(k);
            }
        }
    }
    second
}

// Fraction of races in which at least two miners report a hash count of at
// most m. Recorded rounds are 0-based, so the miner's hash count is k + 1;
// the closed form instead admits hashes through round ⌊μ/T⌋ itself, and
// that systematic one-round gap is part of the measured error.
fn dispute_freq_for(races: &[RaceOutcome], m: f64) -> f64 {
    let disputes = races
        .iter()
        .filter(|race| second_fastest(race).is_some_and(|k| (k + 1) as f64 <= m))
        .count();
    disputes as f64 / races.len() as f64
}

/// Compute all empirical statistics of a campaign.
///
/// `⌊μ/T⌋` is formed by floating-point division, matching the database key
/// convention.
pub fn empirical_stats(
    campaign: &CampaignRecord,
    mu: f64,
    t: f64,
    th: f64,
    th_prime: f64,
) -> Result<EmpiricalStats, ValidationError> {
    if campaign.races.is_empty() {
        return Err(ValidationError::EmptyCampaign);
    }
    let race_count = campaign.race_count();
    let winners: Vec<u64> = campaign
        .races
        .iter()
        .filter_map(|race| race.winner_rounds)
        .collect();
    let l = winners.len() as u64;
    let (mean, gt, lt) = if l == 0 {
        (None, None, None)
    } else {
        let sum: f64 = winners.iter().map(|&w| w as f64).sum();
        let gt = winners.iter().filter(|&&w| t * w as f64 > th).count();
        let lt = winners.iter().filter(|&&w| t * (w as f64) < th_prime).count();
        (
            Some(sum / l as f64),
            Some(gt as f64 / l as f64),
            Some(lt as f64 / l as f64),
        )
    };
    let m = (mu / t).floor();
    Ok(EmpiricalStats {
        race_count,
        success_count: l,
        mean_winner_rounds: mean,
        failure_freq: (race_count - l) as f64 / race_count as f64,
        time_gt_freq: gt,
        time_lt_freq: lt,
        dispute_freq: dispute_freq_for(&campaign.races, m),
    })
}

/// Absolute and relative error of the empirical mean rounds against the
/// analytic expectation.
///
/// The closed form sums over the success mass only, so the matching
/// estimator averages winner rounds over *all* races, with failed races
/// contributing zero. Averaging over successes alone would overshoot by a
/// factor `1/(1 - failure)`.
pub fn rounds_errors(campaign: &CampaignRecord) -> Result<(f64, f64), ValidationError> {
    if campaign.races.is_empty() {
        return Err(ValidationError::EmptyCampaign);
    }
    let winners: Vec<u64> = campaign
        .races
        .iter()
        .filter_map(|race| race.winner_rounds)
        .collect();
    if winners.is_empty() {
        return Err(ValidationError::NoSuccesses);
    }
    let mean = winners.iter().map(|&w| w as f64).sum::<f64>() / campaign.races.len() as f64;
    let expected = powmodel::expected_rounds(&campaign.config.design)?;
    let abs = (expected - mean).abs();
    Ok((abs, abs / expected))
}

// ---------------------------------------------------------------------------
// Corpus generation over the benchmark triple grid
// ---------------------------------------------------------------------------

/// The benchmark triple grid: `s ∈ {4, 8, …, 32}`, `r ∈ {8, 16, 32, 64,
/// 128}`, `d ∈ {4, 8, 12, 16, 17, 18, 19, 20}`, optionally truncated at
/// `max_d` for desk-scale runs.
pub fn benchmark_grid(max_d: Option<u32>) -> Vec<(u32, u32, u32)> {
    let ss = [4u32, 8, 12, 16, 20, 24, 28, 32];
    let rs = [8u32, 16, 32, 64, 128];
    let ds = [4u32, 8, 12, 16, 17, 18, 19, 20];
    let mut grid = Vec::new();
    for &s in &ss {
        for &r in &rs {
            for &d in &ds {
                if max_d.map_or(true, |cap| d <= cap) {
                    grid.push((s, r, d));
                }
            }
        }
    }
    grid
}

/// A per-triple campaign seed derived from the base seed, so that campaigns
/// of different triples draw from unrelated streams.
pub fn triple_seed(base: u64, s: u32, r: u32, d: u32) -> u64 {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(b"powcalc.corpus.v1");
    h.update(base.to_be_bytes());
    h.update(s.to_be_bytes());
    h.update(r.to_be_bytes());
    h.update(d.to_be_bytes());
    let digest = h.finalize();
    u64::from_be_bytes(digest[..8].try_into().unwrap())
}

/// Run one campaign per grid triple, `⌊10000/s⌋` races each.
pub fn generate_corpus(
    triples: &[(u32, u32, u32)],
    mode: Mode,
    base_seed: u64,
) -> Result<Vec<CampaignRecord>, ValidationError> {
    let run = |(s, r, d): (u32, u32, u32)| -> Result<CampaignRecord, ValidationError> {
        let design = MiningDesign::new(s, r, d)?;
        let config = RaceConfig::new(design, mode, triple_seed(base_seed, s, r, d));
        let races = config.default_race_count();
        Ok(simulator::run_campaign_seq(&config, races)?)
    };
    par::map_collect(triples.to_vec(), run)
        .into_iter()
        .collect()
}

// ---------------------------------------------------------------------------
// Corpus-level error summaries
// ---------------------------------------------------------------------------

/// Errors aggregated over a corpus of campaigns.
///
/// Rounds and tail statistics are restricted to campaigns whose analytic
/// failure probability is below 0.35, where enough successes exist for the
/// empirical frequencies to be meaningful.
#[derive(Debug, Clone)]
pub struct CorpusSummary {
    pub campaign_count: usize,
    pub failure_abs_max: f64,
    pub failure_abs_mean: f64,
    /// Mean absolute rounds error over successful outcomes (each campaign
    /// weighted by its success count), failure probability < 0.35.
    pub rounds_abs_mean: f64,
    /// Mean relative rounds error over successful outcomes, failure
    /// probability < 0.35.
    pub rounds_rel_mean: f64,
    /// Tail errors for `th = 1.2·T·2^d` and `th' = 0.8·T·2^d`; `T` cancels,
    /// so the thresholds are applied in rounds. Max/mean over campaigns where
    /// the metric is applicable and failure probability < 0.35.
    pub tail_gt_max: f64,
    pub tail_gt_mean: f64,
    pub tail_lt_max: f64,
    pub tail_lt_mean: f64,
}

/// Absolute tail-probability errors of one campaign at the twenty-percent
/// thresholds. Each side is `None` when its analytic counterpart is
/// inapplicable or the campaign has no successes.
pub fn tail_errors(campaign: &CampaignRecord) -> Result<(Option<f64>, Option<f64>), ValidationError> {
    let design = &campaign.config.design;
    let pow2d = 2f64.powi(design.d() as i32);
    // Evaluate with T = 1 so thresholds are expressed directly in rounds.
    let stats = empirical_stats(campaign, 0.0, 1.0, 1.2 * pow2d, 0.8 * pow2d)?;
    let gt = match (powmodel::prob_time_gt(design, 1.0, 1.2 * pow2d)?, stats.time_gt_freq) {
        (ProbResult::Value(p), Some(freq)) => Some((p - freq).abs()),
        _ => None,
    };
    let lt = match (powmodel::prob_time_lt(design, 1.0, 0.8 * pow2d)?, stats.time_lt_freq) {
        (ProbResult::Value(p), Some(freq)) => Some((p - freq).abs()),
        _ => None,
    };
    Ok((gt, lt))
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        f64::NAN
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

fn max(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NAN, f64::max)
}

/// Aggregate model-versus-empirics errors over a corpus.
pub fn corpus_summary(corpus: &[CampaignRecord]) -> Result<CorpusSummary, ValidationError> {
    let mut failure_abs = Vec::new();
    let mut rounds_abs = Vec::new();
    let mut rounds_rel = Vec::new();
    let mut gt_abs = Vec::new();
    let mut lt_abs = Vec::new();
    for campaign in corpus {
        let design = &campaign.config.design;
        let analytic_failure = powmodel::failure_prob(design)?;
        let stats = empirical_stats(campaign, 0.0, 1.0, f64::INFINITY, 0.0)?;
        failure_abs.push((analytic_failure - stats.failure_freq).abs());
        if analytic_failure < 0.35 {
            if stats.success_count > 0 {
                // Weight the campaign-level rounds error by its number of
                // successful outcomes: the corpus averages are over outcomes,
                // not campaigns, so large-race campaigns count accordingly.
                let (abs, rel) = rounds_errors(campaign)?;
                for _ in 0..stats.success_count {
                    rounds_abs.push(abs);
                    rounds_rel.push(rel);
                }
            }
            let (gt, lt) = tail_errors(campaign)?;
            if let Some(e) = gt {
                gt_abs.push(e);
            }
            if let Some(e) = lt {
                lt_abs.push(e);
            }
        }
    }
    Ok(CorpusSummary {
        campaign_count: corpus.len(),
        failure_abs_max: max(&failure_abs),
        failure_abs_mean: mean(&failure_abs),
        rounds_abs_mean: mean(&rounds_abs),
        rounds_rel_mean: mean(&rounds_rel),
        tail_gt_max: max(&gt_abs),
        tail_gt_mean: mean(&gt_abs),
        tail_lt_max: max(&lt_abs),
        tail_lt_mean: mean(&lt_abs),
    })
}

/// One point of the rounds-error-versus-failure-threshold curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    /// Number of campaigns whose empirical or analytic failure probability
    /// is below `x` and that have at least one success.
    pub count: usize,
    pub max_abs: Option<f64>,
    pub mean_abs: Option<f64>,
}

/// Default threshold grid `{0.01 + 0.05·b | 0 ≤ b ≤ 20}`.
pub fn default_x_grid() -> Vec<f64> {
    (0..=20).map(|b| 0.01 + 0.05 * b as f64).collect()
}

/// For each threshold `x`, the max and mean absolute rounds error over all
/// campaigns whose empirical or analytic failure probability is below `x`.
pub fn threshold_curves(
    corpus: &[CampaignRecord],
    x_grid: &[f64],
) -> Result<Vec<CurvePoint>, ValidationError> {
    // (empirical failure, analytic failure, abs rounds error) per campaign
    let mut rows = Vec::with_capacity(corpus.len());
    for campaign in corpus {
        let stats = empirical_stats(campaign, 0.0, 1.0, f64::INFINITY, 0.0)?;
        let analytic = powmodel::failure_prob(&campaign.config.design)?;
        let abs = match rounds_errors(campaign) {
            Ok((abs, _)) => Some(abs),
            Err(ValidationError::NoSuccesses) => None,
            Err(e) => return Err(e),
        };
        rows.push((stats.failure_freq, analytic, abs));
    }
    Ok(x_grid
        .iter()
        .map(|&x| {
            let selected: Vec<f64> = rows
                .iter()
                .filter(|(emp, ana, _)| *emp < x || *ana < x)
                .filter_map(|(_, _, abs)| *abs)
                .collect();
            CurvePoint {
                x,
                count: selected.len(),
                max_abs: (!selected.is_empty()).then(|| max(&selected)),
                mean_abs: (!selected.is_empty()).then(|| mean(&selected)),
            }
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Dispute-error database
// ---------------------------------------------------------------------------

/// One database row: a (triple, μ, T) key with the analytic dispute
/// probability, empirical dispute frequency, and their absolute difference.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorEntry {
    pub s: u32,
    pub r: u32,
    pub d: u32,
    pub mu: f64,
    pub t: f64,
    pub theoretical: f64,
    pub empirical: f64,
    pub abs_error: f64,
}

impl ErrorEntry {
    pub fn mu_over_t_floor(&self) -> f64 {
        (self.mu / self.t).floor()
    }
}

// 10^-j as correctly rounded literals; the grid values must be produced by
// exactly this arithmetic because the ⌊μ/T⌋ keys depend on the final bits.
const POW10_NEG: [f64; 8] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

/// μ grid `{0.02·10^−j | 1 ≤ j ≤ 8} ∪ {1, 2, 10, 100}`.
pub fn mu_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = POW10_NEG.iter().map(|p| 0.02 * p).collect();
    grid.extend([1.0, 2.0, 10.0, 100.0]);
    grid
}

/// T grid `{0.02·10^−j | 1 ≤ j ≤ 8}`.
pub fn t_grid() -> Vec<f64> {
    POW10_NEG.iter().map(|p| 0.02 * p).collect()
}

/// Build the dispute-error database: one entry per (campaign triple, μ, T).
/// The full benchmark corpus yields 320·96 = 30720 entries.
pub fn build_database(corpus: &[CampaignRecord]) -> Result<Vec<ErrorEntry>, ValidationError> {
    let pairs: Vec<(f64, f64)> = mu_grid()
        .into_iter()
        .flat_map(|mu| t_grid().into_iter().map(move |t| (mu, t)))
        .collect();
    let per_campaign = |campaign: &CampaignRecord| -> Result<Vec<ErrorEntry>, ValidationError> {
        let design = &campaign.config.design;
        // Second-fastest success per race, computed once; both probabilities
        // are then memoized per distinct ⌊μ/T⌋ value.
        let seconds: Vec<Option<u64>> = campaign.races.iter().map(second_fastest).collect();
        let mut memo: HashMap<u64, (f64, f64)> = HashMap::new();
        let mut entries = Vec::with_capacity(pairs.len());
        for &(mu, t) in &pairs {
            let m = (mu / t).floor();
            let (theoretical, empirical) = match memo.entry(m.to_bits()) {
                std::collections::hash_map::Entry::Occupied(e) => *e.get(),
                std::collections::hash_map::Entry::Vacant(slot) => {
                    let theoretical = powmodel::dispute_prob_floor(design, m)?;
                    // Hash counts (k + 1, 1-based) against the window, as in
                    // dispute_freq_for.
                    let disputes = seconds
                        .iter()
                        .filter(|k| k.is_some_and(|k| (k + 1) as f64 <= m))
                        .count();
                    let empirical = disputes as f64 / seconds.len() as f64;
                    *slot.insert((theoretical, empirical))
                }
            };
            entries.push(ErrorEntry {
                s: design.s(),
                r: design.r(),
                d: design.d(),
                mu,
                t,
                theoretical,
                empirical,
                abs_error: (theoretical - empirical).abs(),
            });
        }
        Ok(entries)
    };
    let nested = par::map_collect(corpus.to_vec(), |c| per_campaign(&c));
    let mut db = Vec::with_capacity(corpus.len() * pairs.len());
    for chunk in nested {
        db.extend(chunk?);
    }
    Ok(db)
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

/// Fields a query atom can inspect. `FailureProb` is the analytic failure
/// probability of the entry's triple, computed on demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    S,
    R,
    D,
    Mu,
    T,
    MuOverTFloor,
    Theoretical,
    Empirical,
    AbsError,
    FailureProb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

/// One comparison `field ∘ value`; predicates are conjunctions of atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub field: Field,
    pub cmp: Cmp,
    pub value: f64,
}

impl FromStr for Atom {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let ops = [
            ("<=", Cmp::Le),
            (">=", Cmp::Ge),
            ("<", Cmp::Lt),
            (">", Cmp::Gt),
            ("=", Cmp::Eq),
        ];
        let (pos, op_text, cmp) = ops
            .iter()
            .filter_map(|(op, cmp)| text.find(op).map(|pos| (pos, *op, *cmp)))
            .min_by_key(|(pos, op, _)| (*pos, std::cmp::Reverse(op.len())))
            .ok_or_else(|| format!("no comparator in atom {text:?}"))?;
        let field = match text[..pos].trim() {
            "s" => Field::S,
            "r" => Field::R,
            "d" => Field::D,
            "mu" => Field::Mu,
            "T" | "t" => Field::T,
            "mu_over_t" => Field::MuOverTFloor,
            "theoretical" => Field::Theoretical,
            "empirical" => Field::Empirical,
            "abs_error" => Field::AbsError,
            "failure_prob" => Field::FailureProb,
            other => return Err(format!("unknown field {other:?}")),
        };
        let value: f64 = text[pos + op_text.len()..]
            .trim()
            .parse()
            .map_err(|e| format!("bad constant in atom {text:?}: {e}"))?;
        Ok(Atom { field, cmp, value })
    }
}

/// Parse a conjunction like `d=4 & abs_error<0.1`. An empty string is the
/// always-true predicate.
pub fn parse_predicate(text: &str) -> Result<Vec<Atom>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split('&').map(|atom| atom.trim().parse()).collect()
}

/// Counts from one query: `a` entries satisfy the condition, `b` of those
/// also satisfy the property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryResult {
    pub a: u64,
    pub b: u64,
}

impl QueryResult {
    /// `⌊100·b/a⌋`, or `None` when no entry satisfies the condition.
    pub fn percentage(&self) -> Option<u64> {
        (self.a > 0).then(|| 100 * self.b / self.a)
    }
}

struct FieldEval {
    failure_memo: HashMap<(u32, u32, u32), f64>,
}

impl FieldEval {
    fn eval(&mut self, entry: &ErrorEntry, field: Field) -> Result<f64, ValidationError> {
        Ok(match field {
            Field::S => entry.s as f64,
            Field::R => entry.r as f64,
            Field::D => entry.d as f64,
            Field::Mu => entry.mu,
            Field::T => entry.t,
            Field::MuOverTFloor => entry.mu_over_t_floor(),
            Field::Theoretical => entry.theoretical,
            Field::Empirical => entry.empirical,
            Field::AbsError => entry.abs_error,
            Field::FailureProb => {
                let key = (entry.s, entry.r, entry.d);
                match self.failure_memo.get(&key) {
                    Some(&p) => p,
                    None => {
                        let design = MiningDesign::new(entry.s, entry.r, entry.d)?;
                        let p = powmodel::failure_prob(&design)?;
                        self.failure_memo.insert(key, p);
                        p
                    }
                }
            }
        })
    }

    fn holds(&mut self, entry: &ErrorEntry, atoms: &[Atom]) -> Result<bool, ValidationError> {
        for atom in atoms {
            let lhs = self.eval(entry, atom.field)?;
            let ok = match atom.cmp {
                Cmp::Lt => lhs < atom.value,
                Cmp::Le => lhs <= atom.value,
                Cmp::Eq => lhs == atom.value,
                Cmp::Ge => lhs >= atom.value,
                Cmp::Gt => lhs > atom.value,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// How many entries satisfy `condition`, and how many of those also satisfy
/// `property`.
pub fn query(
    db: &[ErrorEntry],
    condition: &[Atom],
    property: &[Atom],
) -> Result<QueryResult, ValidationError> {
    let mut eval = FieldEval {
        failure_memo: HashMap::new(),
    };
    let mut result = QueryResult { a: 0, b: 0 };
    for entry in db {
        if eval.holds(entry, condition)? {
            result.a += 1;
            if eval.holds(entry, property)? {
                result.b += 1;
            }
        }
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// Database persistence
// ---------------------------------------------------------------------------

/// Write the database as delimited text, one entry per line. Floats use the
/// shortest representation that round-trips exactly.
pub fn write_database(db: &[ErrorEntry], out: &mut impl Write) -> Result<(), ValidationError> {
    for e in db {
        writeln!(
            out,
            "{} {} {} {} {} {} {} {}",
            e.s, e.r, e.d, e.mu, e.t, e.theoretical, e.empirical, e.abs_error
        )?;
    }
    Ok(())
}

pub fn read_database(input: &mut impl BufRead) -> Result<Vec<ErrorEntry>, ValidationError> {
    let mut db = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 8 {
            return Err(ValidationError::Format(format!(
                "line {}: expected 8 fields, got {}",
                idx + 1,
                fields.len()
            )));
        }
        let bad = |name: &str, e: String| {
            ValidationError::Format(format!("line {}: {name}: {e}", idx + 1))
        };
        db.push(ErrorEntry {
            s: fields[0].parse().map_err(|e: std::num::ParseIntError| bad("s", e.to_string()))?,
            r: fields[1].parse().map_err(|e: std::num::ParseIntError| bad("r", e.to_string()))?,
            d: fields[2].parse().map_err(|e: std::num::ParseIntError| bad("d", e.to_string()))?,
            mu: fields[3].parse().map_err(|e: std::num::ParseFloatError| bad("mu", e.to_string()))?,
            t: fields[4].parse().map_err(|e: std::num::ParseFloatError| bad("T", e.to_string()))?,
            theoretical: fields[5]
                .parse()
                .map_err(|e: std::num::ParseFloatError| bad("theoretical", e.to_string()))?,
            empirical: fields[6]
                .parse()
                .map_err(|e: std::num::ParseFloatError| bad("empirical", e.to_string()))?,
            abs_error: fields[7]
                .parse()
                .map_err(|e: std::num::ParseFloatError| bad("abs_error", e.to_string()))?,
        });
    }
    Ok(db)
}
