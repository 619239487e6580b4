//! End-to-end validation flow: generate a small corpus, persist it, build
//! the error database, and answer queries.

use powcalc::simulator::{self, Mode};
use powcalc::validation::{self, Atom, Cmp, Field};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};

fn small_corpus() -> Vec<simulator::CampaignRecord> {
    let grid = [(4u32, 12u32, 6u32), (4, 12, 8), (8, 16, 8), (1, 8, 4)];
    validation::generate_corpus(&grid, Mode::GeometricSampling, 99).unwrap()
}

#[test]
fn corpus_round_trips_through_files() {
    let corpus = small_corpus();
    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for record in &corpus {
        let cfg = &record.config;
        let path = dir.path().join(format!(
            "campaign_s{}_r{}_d{}.txt",
            cfg.design.s(),
            cfg.design.r(),
            cfg.design.d()
        ));
        let mut out = BufWriter::new(File::create(&path).unwrap());
        simulator::write_campaign(record, &mut out).unwrap();
        out.flush().unwrap();
        paths.push(path);
    }
    let reloaded: Vec<_> = paths
        .iter()
        .map(|p| simulator::read_campaign(&mut BufReader::new(File::open(p).unwrap())).unwrap())
        .collect();
    for (a, b) in corpus.iter().zip(&reloaded) {
        assert_eq!(a.races, b.races);
    }
    // database built from the reloaded corpus is identical
    let direct = validation::build_database(&corpus).unwrap();
    let via_files = validation::build_database(&reloaded).unwrap();
    assert_eq!(direct, via_files);
}

#[test]
fn database_counts_and_invariants() {
    let corpus = small_corpus();
    let db = validation::build_database(&corpus).unwrap();
    assert_eq!(db.len(), corpus.len() * 96);
    for entry in &db {
        assert!((entry.abs_error - (entry.theoretical - entry.empirical).abs()).abs() < 1e-15);
    }
    // s=1 campaigns contribute all-zero empirical dispute frequencies
    let s1 = validation::query(
        &db,
        &validation::parse_predicate("s=1").unwrap(),
        &validation::parse_predicate("empirical<=0").unwrap(),
    )
    .unwrap();
    assert_eq!(s1.a, 96);
    assert_eq!(s1.b, 96);
}

#[test]
fn query_b_never_exceeds_a() {
    let corpus = small_corpus();
    let db = validation::build_database(&corpus).unwrap();
    let conditions = ["", "d=8", "s>=4 & r=12", "abs_error<0.01", "mu_over_t=10"];
    let properties = ["", "abs_error<0.1", "theoretical>0.5", "failure_prob<0.35"];
    for condition in conditions {
        for property in properties {
            let q = validation::query(
                &db,
                &validation::parse_predicate(condition).unwrap(),
                &validation::parse_predicate(property).unwrap(),
            )
            .unwrap();
            assert!(q.b <= q.a, "{condition:?} / {property:?}");
            if let Some(pct) = q.percentage() {
                assert!(pct <= 100);
            } else {
                assert_eq!(q.a, 0);
            }
        }
    }
}

#[test]
fn manual_count_matches_query() {
    let corpus = small_corpus();
    let db = validation::build_database(&corpus).unwrap();
    let cond = [Atom {
        field: Field::D,
        cmp: Cmp::Eq,
        value: 8.0,
    }];
    let prop = [Atom {
        field: Field::AbsError,
        cmp: Cmp::Lt,
        value: 0.05,
    }];
    let q = validation::query(&db, &cond, &prop).unwrap();
    let a = db.iter().filter(|e| e.d == 8).count() as u64;
    let b = db
        .iter()
        .filter(|e| e.d == 8 && e.abs_error < 0.05)
        .count() as u64;
    assert_eq!((q.a, q.b), (a, b));
    assert_eq!(a, 2 * 96);
}

#[test]
fn threshold_curves_cover_grid() {
    let corpus = small_corpus();
    let points = validation::threshold_curves(&corpus, &validation::default_x_grid()).unwrap();
    assert_eq!(points.len(), 21);
    // by x = 1.01 every campaign with successes is included
    let last = points.last().unwrap();
    assert_eq!(last.count, corpus.len());
    assert!(last.max_abs.unwrap() >= last.mean_abs.unwrap());
}

#[test]
fn database_file_round_trip() {
    let corpus = small_corpus();
    let db = validation::build_database(&corpus).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("db.txt");
    let mut out = BufWriter::new(File::create(&path).unwrap());
    validation::write_database(&db, &mut out).unwrap();
    out.flush().unwrap();
    let reloaded =
        validation::read_database(&mut BufReader::new(File::open(&path).unwrap())).unwrap();
    assert_eq!(reloaded, db);
}
