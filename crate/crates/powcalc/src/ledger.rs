//! Governed-ledger authentication: transaction triples, PoW-mined blocks
//! with Merkle membership proofs, and the auditor's trustworthiness
//! decision.
//!
//! Desk-scale and in-process: no networking, fork choice, or signatures.
//! Block validity is PoW + linkage + Merkle.

use crate::powmodel::MiningDesign;
use crate::simulator::leading_zero_bits;
use num_traits::ToPrimitive;
use sha2::{Digest as _, Sha256};
use std::fmt::Write as _;
use std::io::{self, Read, Write};
use thiserror::Error;

pub type Digest = [u8; 32];

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("transaction input must be non-empty")]
    EmptyInput,
    #[error("cannot mine a block with no pending transactions")]
    EmptyPending,
    #[error("nonce space exhausted without a valid proof of work")]
    MiningFailure,
    #[error("nonce space too large to search exhaustively")]
    NonceSpaceTooLarge,
    #[error("block {height}: {problem}")]
    InvalidBlock { height: u64, problem: String },
    #[error("chain file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Double SHA-256.
pub fn hash(bytes: &[u8]) -> Digest {
    let first = Sha256::digest(bytes);
    Sha256::digest(first).into()
}

fn hash_pair(left: &Digest, right: &Digest) -> Digest {
    let mut buf = [0u8; 64];
    buf[..32].copy_from_slice(left);
    buf[32..].copy_from_slice(right);
    hash(&buf)
}

// ---------------------------------------------------------------------------
// Authentication triples
// ---------------------------------------------------------------------------

/// An authentication triple `(input, hash(input), location)`; `location` is
/// the height of the block holding the digest, or `None` while unconfirmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuthTriple {
    pub input: Vec<u8>,
    pub digest: Digest,
    pub location: Option<u64>,
}

/// Create an unconfirmed triple for a transaction input.
pub fn submit(input: &[u8]) -> Result<AuthTriple, LedgerError> {
    if input.is_empty() {
        return Err(LedgerError::EmptyInput);
    }
    Ok(AuthTriple {
        input: input.to_vec(),
        digest: hash(input),
        location: None,
    })
}

// ---------------------------------------------------------------------------
// Merkle trees
// ---------------------------------------------------------------------------

/// Merkle root over ordered leaf digests. A level with an odd number of
/// nodes duplicates its last node; a single leaf is its own root; an empty
/// list has the all-zero root.
pub fn merkle_root(leaves: &[Digest]) -> Digest {
    if leaves.is_empty() {
        return [0u8; 32];
    }
    let mut level = leaves.to_vec();
    while level.len() > 1 {
        if level.len() % 2 == 1 {
            level.push(*level.last().unwrap());
        }
        level = level
            .chunks(2)
            .map(|pair| hash_pair(&pair[0], &pair[1]))
            .collect();
    }
    level[0]
}

/// An authentication path from a leaf to the root: the sibling digest at
/// each level, bottom-up. The leaf index selects the side at each level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MerkleProof {
    pub leaf_index: usize,
    pub path: Vec<Digest>,
}

impl MerkleProof {
    /// Recompute the root this proof yields for `leaf`.
    pub fn root_for(&self, leaf: &Digest) -> Digest {
        let mut node = *leaf;
        let mut index = self.leaf_index;
        for sibling in &self.path {
            node = if index % 2 == 0 {
                hash_pair(&node, sibling)
            } else {
                hash_pair(sibling, &node)
            };
            index /= 2;
        }
        node
    }
}

/// Membership proof for `digest` among `leaves`, or `None` if absent.
pub fn merkle_proof(digest: &Digest, leaves: &[Digest]) -> Option<MerkleProof> {
    let leaf_index = leaves.iter().position(|l| l == digest)?;
    let mut path = Vec::new();
    let mut level = leaves.to_vec();
    let mut index = leaf_index;
    while level.len() > 1 {
        if level.len() % 2 == 1 {
            level.push(*level.last().unwrap());
        }
        let sibling = if index % 2 == 0 { index + 1 } else { index - 1 };
        path.push(level[sibling]);
        level = level
            .chunks(2)
            .map(|pair| hash_pair(&pair[0], &pair[1]))
            .collect();
        index /= 2;
    }
    Some(MerkleProof { leaf_index, path })
}

// ---------------------------------------------------------------------------
// Blocks and chains
// ---------------------------------------------------------------------------

/// A mined block. The header is `height ∥ prev_digest ∥ merkle_root ∥
/// difficulty ∥ nonce` with big-endian integers; its double SHA-256 must
/// have at least `difficulty` leading zero bits (genesis excepted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub height: u64,
    pub prev_digest: Digest,
    pub merkle_root: Digest,
    pub difficulty: u32,
    pub nonce: u128,
    pub tx_digests: Vec<Digest>,
}

const HEADER_BYTES: usize = 8 + 32 + 32 + 4 + 16;

impl Block {
    pub fn header_bytes(&self) -> [u8; HEADER_BYTES] {
        let mut buf = [0u8; HEADER_BYTES];
        buf[..8].copy_from_slice(&self.height.to_be_bytes());
        buf[8..40].copy_from_slice(&self.prev_digest);
        buf[40..72].copy_from_slice(&self.merkle_root);
        buf[72..76].copy_from_slice(&self.difficulty.to_be_bytes());
        buf[76..].copy_from_slice(&self.nonce.to_be_bytes());
        buf
    }

    pub fn header_digest(&self) -> Digest {
        hash(&self.header_bytes())
    }

    /// PoW, Merkle-root, and (given the predecessor digest) linkage checks.
    fn validate(&self, prev: Option<&Digest>) -> Result<(), LedgerError> {
        let fail = |problem: String| LedgerError::InvalidBlock {
            height: self.height,
            problem,
        };
        if self.merkle_root != merkle_root(&self.tx_digests) {
            return Err(fail("merkle root does not match transactions".into()));
        }
        match prev {
            None => {
                if self.height != 0 || self.prev_digest != [0u8; 32] {
                    return Err(fail("genesis must have height 0 and zero prev digest".into()));
                }
            }
            Some(prev) => {
                if &self.prev_digest != prev {
                    return Err(fail("prev digest does not match predecessor".into()));
                }
                if leading_zero_bits(&self.header_digest()) < self.difficulty {
                    return Err(fail("proof of work does not meet difficulty".into()));
                }
            }
        }
        Ok(())
    }
}

/// An in-process chain. `current_block_height` is the number of blocks,
/// genesis included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    blocks: Vec<Block>,
}

impl Default for Chain {
    fn default() -> Self {
        Self::new()
    }
}

impl Chain {
    /// A chain holding only the genesis block: all-zero prev digest, no
    /// transactions, exempt from PoW.
    pub fn new() -> Self {
        Chain {
            blocks: vec![Block {
                height: 0,
                prev_digest: [0u8; 32],
                merkle_root: merkle_root(&[]),
                difficulty: 0,
                nonce: 0,
                tx_digests: Vec::new(),
            }],
        }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The number of blocks added so far.
    pub fn current_block_height(&self) -> u64 {
        self.blocks.len() as u64
    }

    pub fn tip_digest(&self) -> Digest {
        self.blocks.last().expect("chain is never empty").header_digest()
    }

    /// Mine a block over the pending digests, scanning the design's nonce
    /// space (`s·λ` nonces) in order.
    pub fn mine_block(
        &self,
        pending: &[Digest],
        design: &MiningDesign,
    ) -> Result<Block, LedgerError> {
        if pending.is_empty() {
            return Err(LedgerError::EmptyPending);
        }
        let nonce_count = (design.lambda() * design.s())
            .to_u64()
            .ok_or(LedgerError::NonceSpaceTooLarge)?;
        let mut block = Block {
            height: self.current_block_height(),
            prev_digest: self.tip_digest(),
            merkle_root: merkle_root(pending),
            difficulty: design.d(),
            nonce: 0,
            tx_digests: pending.to_vec(),
        };
        for nonce in 0..nonce_count {
            block.nonce = nonce as u128;
            if leading_zero_bits(&block.header_digest()) >= design.d() {
                return Ok(block);
            }
        }
        Err(LedgerError::MiningFailure)
    }

    /// Validate and append a block.
    pub fn add_block(&mut self, block: Block) -> Result<(), LedgerError> {
        if block.height != self.current_block_height() {
            return Err(LedgerError::InvalidBlock {
                height: block.height,
                problem: format!("expected height {}", self.current_block_height()),
            });
        }
        block.validate(Some(&self.tip_digest()))?;
        self.blocks.push(block);
        Ok(())
    }

    /// Re-validate every block bottom-up; detects any post-hoc tampering.
    pub fn verify(&self) -> Result<(), LedgerError> {
        let mut prev: Option<Digest> = None;
        for block in &self.blocks {
            block.validate(prev.as_ref())?;
            prev = Some(block.header_digest());
        }
        Ok(())
    }

    /// Fill in `location` for every unconfirmed triple whose digest appears
    /// in some block (the lowest such height).
    pub fn confirm(&self, triples: &mut [AuthTriple]) {
        for triple in triples.iter_mut().filter(|t| t.location.is_none()) {
            triple.location = self
                .blocks
                .iter()
                .find(|b| b.tx_digests.contains(&triple.digest))
                .map(|b| b.height);
        }
    }
}

/// The auditor's verdict on one triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Unverified,
    Untrustworthy,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "Verified",
            Verdict::Unverified => "Unverified",
            Verdict::Untrustworthy => "Untrustworthy",
        })
    }
}

/// Audit a triple against the chain at confirmation depth `k`.
///
/// Unconfirmed or digest-mismatched triples are `Unverified`; a dangling
/// location is `Untrustworthy`; insufficient depth (`location + k` beyond
/// the current height) is `Unverified`; otherwise Merkle membership in the
/// referenced block decides `Verified` versus `Untrustworthy`.
pub fn audit(triple: &AuthTriple, chain: &Chain, k: u64) -> Verdict {
    let Some(location) = triple.location else {
        return Verdict::Unverified;
    };
    if triple.digest != hash(&triple.input) {
        return Verdict::Unverified;
    }
    if location >= chain.current_block_height() {
        return Verdict::Untrustworthy;
    }
    if location.saturating_add(k) > chain.current_block_height() {
        return Verdict::Unverified;
    }
    let block = &chain.blocks()[location as usize];
    match merkle_proof(&triple.digest, &block.tx_digests) {
        Some(proof) if proof.root_for(&triple.digest) == block.merkle_root => Verdict::Verified,
        _ => Verdict::Untrustworthy,
    }
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

/// Write the chain as length-prefixed binary records, one per block:
/// `record_len u32 ∥ height u64 ∥ prev ∥ merkle ∥ difficulty u32 ∥ nonce
/// u128 ∥ tx_count u32 ∥ digests`, all integers big-endian.
pub fn write_chain(chain: &Chain, out: &mut impl Write) -> Result<(), LedgerError> {
    for block in chain.blocks() {
        let record_len = (HEADER_BYTES + 4 + 32 * block.tx_digests.len()) as u32;
        out.write_all(&record_len.to_be_bytes())?;
        out.write_all(&block.header_bytes())?;
        out.write_all(&(block.tx_digests.len() as u32).to_be_bytes())?;
        for digest in &block.tx_digests {
            out.write_all(digest)?;
        }
    }
    Ok(())
}

/// Read and fully re-validate a chain.
pub fn read_chain(input: &mut impl Read) -> Result<Chain, LedgerError> {
    let mut data = Vec::new();
    input.read_to_end(&mut data)?;
    let mut blocks = Vec::new();
    let mut at = 0usize;
    while at < data.len() {
        let take = |at: &mut usize, n: usize| -> Result<&[u8], LedgerError> {
            let slice = data
                .get(*at..*at + n)
                .ok_or_else(|| LedgerError::Format("truncated record".into()))?;
            *at += n;
            Ok(slice)
        };
        let record_len = u32::from_be_bytes(take(&mut at, 4)?.try_into().unwrap()) as usize;
        let record_end = at + record_len;
        let height = u64::from_be_bytes(take(&mut at, 8)?.try_into().unwrap());
        let prev_digest: Digest = take(&mut at, 32)?.try_into().unwrap();
        let merkle: Digest = take(&mut at, 32)?.try_into().unwrap();
        let difficulty = u32::from_be_bytes(take(&mut at, 4)?.try_into().unwrap());
        let nonce = u128::from_be_bytes(take(&mut at, 16)?.try_into().unwrap());
        let tx_count = u32::from_be_bytes(take(&mut at, 4)?.try_into().unwrap()) as usize;
        let mut tx_digests = Vec::with_capacity(tx_count);
        for _ in 0..tx_count {
            tx_digests.push(take(&mut at, 32)?.try_into().unwrap());
        }
        if at != record_end {
            return Err(LedgerError::Format(format!(
                "record for height {height} has inconsistent length"
            )));
        }
        blocks.push(Block {
            height,
            prev_digest,
            merkle_root: merkle,
            difficulty,
            nonce,
            tx_digests,
        });
    }
    if blocks.is_empty() {
        return Err(LedgerError::Format("chain has no blocks".into()));
    }
    for (i, block) in blocks.iter().enumerate() {
        if block.height != i as u64 {
            return Err(LedgerError::Format(format!(
                "block {i} declares height {}",
                block.height
            )));
        }
    }
    let chain = Chain { blocks };
    chain.verify()?;
    Ok(chain)
}

fn hex(digest: &Digest) -> String {
    let mut out = String::with_capacity(64);
    for byte in digest {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

/// Human-readable chain dump.
pub fn dump_chain(chain: &Chain) -> String {
    let mut out = String::new();
    for block in chain.blocks() {
        let _ = writeln!(
            out,
            "block {} difficulty {} nonce {}\n  header {}\n  prev   {}\n  merkle {}",
            block.height,
            block.difficulty,
            block.nonce,
            hex(&block.header_digest()),
            hex(&block.prev_digest),
            hex(&block.merkle_root),
        );
        for digest in &block.tx_digests {
            let _ = writeln!(out, "  tx     {}", hex(digest));
        }
    }
    out
}
