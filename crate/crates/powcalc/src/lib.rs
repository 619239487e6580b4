//! Mining calculus: a library for designing proof-of-work parameters
//! (miner count `s`, shared nonce bits `r`, difficulty `d`) for governed
//! blockchains.
//!
//! The crate is organised in layers:
//!
//! * [`numerics`] — stable, tiered-precision evaluation of survival powers
//!   `(1 - 2^-d)^E` for astronomically large exponents `E`;
//! * [`powmodel`] — the closed-form probability model of a synchronized
//!   `s`-miner mining race;
//! * [`optimizer`] — the constraint system, robust feasibility, and the
//!   enumeration algorithm reporting the best robustly feasible triples;
//! * [`simulator`] — a Monte Carlo mining-race simulator (real double
//!   SHA-256 hashing, or distributionally equivalent geometric sampling);
//! * [`validation`] — error metrics comparing the analytic model with
//!   simulated campaigns, plus the queryable error database;
//! * [`ledger`] — a desk-scale governed blockchain with Merkle membership
//!   proofs and the auditor's decision procedure;
//! * [`scenario`] — parsing and serialization of scenario constant files.

pub mod ledger;
pub mod numerics;
pub mod optimizer;
pub mod par;
pub mod powmodel;
pub mod scenario;
pub mod simulator;
pub mod validation;
