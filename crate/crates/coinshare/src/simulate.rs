//! Strategy execution and zero-error verification.
//!
//! A strategy is zero-error when every user can reconstruct the full coin
//! assignment from their held coins plus the blackboard. Each user's view is
//! a linear system B·x = y over GF(2): unit rows for held coins, parity rows
//! for the other users' broadcasts. Verification runs both ways and the
//! results must agree:
//!
//! * algebraically, by checking every user's B determines all coins;
//! * empirically, by enumerating (or sampling) assignments, running the
//!   protocol, and decoding through every user's system.

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec, Reduction};
use crate::ratio::Ratio;
use crate::strategy::Strategy;

/// Exhaustive verification refuses beyond 2^24 assignments.
pub const EXHAUSTIVE_COIN_CAP: usize = 24;

/// Sampled verification packs assignments into one word, minus a sign-free
/// guard bit for the generator's shift.
pub const SAMPLED_COIN_CAP: usize = 63;

/// Multiplier and increment of the sampled-mode linear congruential
/// generator (Knuth's MMIX constants). Reports quote the sequence, so these
/// are part of the output contract.
pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimulateError {
    #[error("assignment covers {got} coins, the strategy has {want}")]
    DomainMismatch { got: usize, want: usize },
    #[error("user {user}'s decoding system is singular: the strategy does not determine every coin")]
    SingularSystem { user: usize },
    #[error("blackboard bits contradict user {user}'s held coins")]
    Inconsistent { user: usize },
    #[error("{coins} coins exceed the 2^{cap} assignment cap; use sampled mode")]
    TooLarge { coins: usize, cap: usize },
}

/// One joint outcome of every coin toss, ordered like `Strategy::coins`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinAssignment {
    bits: BitVec,
}

impl CoinAssignment {
    pub fn new(strategy: &Strategy, bits: BitVec) -> Result<CoinAssignment, SimulateError> {
        if bits.len() != strategy.coins.len() {
            return Err(SimulateError::DomainMismatch {
                got: bits.len(),
                want: strategy.coins.len(),
            });
        }
        Ok(CoinAssignment { bits })
    }

    /// Low bit of `mask` is the first coin. Only usable up to 64 coins.
    pub fn from_mask(strategy: &Strategy, mask: u64) -> CoinAssignment {
        let c = strategy.coins.len();
        assert!(c <= 64, "mask assignments hold at most 64 coins");
        let mut bits = BitVec::zeros(c);
        for i in 0..c {
            if mask >> i & 1 == 1 {
                bits.set(i, true);
            }
        }
        CoinAssignment { bits }
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn bit(&self, coin: usize) -> bool {
        self.bits.get(coin)
    }
}

/// Writes the blackboard: bit j is the XOR of assignment bits over
/// `broadcasts[j]`'s parity set.
pub fn run(strategy: &Strategy, assignment: &CoinAssignment) -> Result<BitVec, SimulateError> {
    if assignment.bits.len() != strategy.coins.len() {
        return Err(SimulateError::DomainMismatch {
            got: assignment.bits.len(),
            want: strategy.coins.len(),
        });
    }
    let mut board = BitVec::zeros(strategy.broadcasts.len());
    for (j, b) in strategy.broadcasts.iter().enumerate() {
        let mut bit = false;
        for sym in &b.parity {
            let idx = strategy
                .coin_index(sym)
                .expect("validated strategies only broadcast known coins");
            bit ^= assignment.bit(idx);
        }
        board.set(j, bit);
    }
    Ok(board)
}

/// Where one right-hand-side entry of a user's system comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhsSource {
    /// The user's own coin, by global coin index.
    Held { coin: usize },
    /// A blackboard bit, by broadcast index.
    Blackboard { bit: usize },
}

/// One user's linear view B·x = y of the protocol. Rows are unit vectors
/// for held coins followed by the parity rows of everyone else's
/// broadcasts; `rhs_plan` records where each y entry comes from.
#[derive(Clone, Debug)]
pub struct DecoderSystem {
    pub user: usize,
    pub matrix: BitMatrix,
    pub rhs_plan: Vec<RhsSource>,
    reduction: Reduction,
}

impl DecoderSystem {
    /// True when the system pins down every coin (full column rank). For
    /// the synthesized families B is square, so this is invertibility.
    pub fn determines_all_coins(&self) -> bool {
        self.reduction.pivot_cols.len() == self.matrix.cols()
    }

    pub fn is_square(&self) -> bool {
        self.matrix.rows() == self.matrix.cols()
    }

    /// Count of unit rows, i.e. coins this user sees directly.
    pub fn held_coins(&self) -> usize {
        self.rhs_plan
            .iter()
            .filter(|s| matches!(s, RhsSource::Held { .. }))
            .count()
    }

    /// Solves for the full assignment. `held` carries the user's own coin
    /// values in rhs_plan order (which is global coin order); `blackboard`
    /// is the full output of [`run`].
    pub fn decode(
        &self,
        held: &BitVec,
        blackboard: &BitVec,
    ) -> Result<CoinAssignment, SimulateError> {
        if !self.determines_all_coins() {
            return Err(SimulateError::SingularSystem { user: self.user });
        }
        let mut y = BitVec::zeros(self.rhs_plan.len());
        let mut next_held = 0;
        for (row, src) in self.rhs_plan.iter().enumerate() {
            let bit = match *src {
                RhsSource::Held { .. } => {
                    let b = held.get(next_held);
                    next_held += 1;
                    b
                }
                RhsSource::Blackboard { bit } => blackboard.get(bit),
            };
            y.set(row, bit);
        }
        debug_assert_eq!(next_held, held.len(), "held must cover the user's coins");
        let z = self.reduction.row_ops.mul_vec(&y);
        let rank = self.reduction.pivot_cols.len();
        for row in rank..self.rhs_plan.len() {
            if z.get(row) {
                return Err(SimulateError::Inconsistent { user: self.user });
            }
        }
        let mut x = BitVec::zeros(self.matrix.cols());
        for (i, &col) in self.reduction.pivot_cols.iter().enumerate() {
            if z.get(i) {
                x.set(col, true);
            }
        }
        Ok(CoinAssignment { bits: x })
    }
}

/// Assembles user's system: unit rows per held coin (coin order), then one
/// parity row per broadcast spoken by someone else (broadcast order).
pub fn build_decoder(strategy: &Strategy, user: usize) -> DecoderSystem {
    assert!(
        user >= 1 && user <= strategy.graph.n(),
        "user {user} outside 1..={}",
        strategy.graph.n()
    );
    let cols = strategy.coins.len();
    let mut rows = Vec::new();
    let mut plan = Vec::new();
    for (i, coin) in strategy.coins.iter().enumerate() {
        if coin.edge.contains(user) {
            let mut row = BitVec::zeros(cols);
            row.set(i, true);
            rows.push(row);
            plan.push(RhsSource::Held { coin: i });
        }
    }
    for (j, b) in strategy.broadcasts.iter().enumerate() {
        if b.speaker == user {
            continue;
        }
        let mut row = BitVec::zeros(cols);
        for sym in &b.parity {
            let idx = strategy
                .coin_index(sym)
                .expect("validated strategies only broadcast known coins");
            row.set(idx, true);
        }
        rows.push(row);
        plan.push(RhsSource::Blackboard { bit: j });
    }
    let matrix = BitMatrix::from_rows(cols, &rows);
    let reduction = matrix.row_reduce();
    DecoderSystem {
        user,
        matrix,
        rhs_plan: plan,
        reduction,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// All 2^|coins| assignments, capped at [`EXHAUSTIVE_COIN_CAP`] coins.
    Exhaustive,
    /// `count` assignments from the seeded congruential generator.
    Sampled { count: u64, seed: u64 },
}

/// Per-user outcome of a verification pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserVerification {
    pub user: usize,
    /// The user's system determines every coin (the algebraic check).
    pub solvable: bool,
    /// First assignment mask this user failed to decode, if any.
    pub first_failure: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationReport {
    pub zero_error: bool,
    pub assignments_checked: u64,
    pub rate: Ratio,
    pub bound: Ratio,
    /// Every user's system determines every coin. Implies zero error
    /// without enumeration; verified against the enumeration anyway.
    pub algebraic_certificate: bool,
    pub per_user_decoded: Vec<UserVerification>,
}

/// Runs the protocol over assignments and checks that every user decodes
/// the exact coin vector every time.
pub fn verify_zero_error(
    strategy: &Strategy,
    mode: VerifyMode,
) -> Result<SimulationReport, SimulateError> {
    let n = strategy.graph.n();
    let coins = strategy.coins.len();
    let cap = match mode {
        VerifyMode::Exhaustive => EXHAUSTIVE_COIN_CAP,
        VerifyMode::Sampled { .. } => SAMPLED_COIN_CAP,
    };
    if coins > cap {
        return Err(SimulateError::TooLarge { coins, cap });
    }

    let decoders: Vec<DecoderSystem> = (1..=n).map(|u| build_decoder(strategy, u)).collect();
    let algebraic_certificate = decoders.iter().all(|d| d.determines_all_coins());

    // Parity masks over coin indices, one per broadcast.
    let masks: Vec<u64> = strategy
        .broadcasts
        .iter()
        .map(|b| {
            let mut m = 0u64;
            for sym in &b.parity {
                let idx = strategy
                    .coin_index(sym)
                    .expect("validated strategies only broadcast known coins");
                m |= 1 << idx;
            }
            m
        })
        .collect();
    let held_indices: Vec<Vec<usize>> = (1..=n)
        .map(|u| {
            strategy
                .coins
                .iter()
                .enumerate()
                .filter(|(_, c)| c.edge.contains(u))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();

    let mut failures: Vec<Option<u64>> = vec![None; n];
    let mut checked = 0u64;
    let check_assignment = |mask: u64, failures: &mut Vec<Option<u64>>| {
        let assignment = CoinAssignment::from_mask(strategy, mask);
        let mut board = BitVec::zeros(masks.len());
        for (j, pm) in masks.iter().enumerate() {
            board.set(j, (mask & pm).count_ones() % 2 == 1);
        }
        for (ui, dec) in decoders.iter().enumerate() {
            if failures[ui].is_some() {
                continue;
            }
            let mut held = BitVec::zeros(held_indices[ui].len());
            for (h, &ci) in held_indices[ui].iter().enumerate() {
                held.set(h, mask >> ci & 1 == 1);
            }
            match dec.decode(&held, &board) {
                Ok(decoded) if decoded == assignment => {}
                _ => failures[ui] = Some(mask),
            }
        }
    };

    match mode {
        VerifyMode::Exhaustive => {
            for mask in 0..1u64 << coins {
                check_assignment(mask, &mut failures);
                checked += 1;
            }
        }
        VerifyMode::Sampled { count, seed } => {
            let mut state = seed;
            for _ in 0..count {
                state = state
                    .wrapping_mul(LCG_MULTIPLIER)
                    .wrapping_add(LCG_INCREMENT);
                let mask = state >> (64 - coins as u32);
                check_assignment(mask, &mut failures);
                checked += 1;
            }
        }
    }

    let per_user_decoded: Vec<UserVerification> = decoders
        .iter()
        .zip(&failures)
        .map(|(d, f)| UserVerification {
            user: d.user,
            solvable: d.determines_all_coins(),
            first_failure: *f,
        })
        .collect();
    let zero_error = failures.iter().all(|f| f.is_none());
    Ok(SimulationReport {
        zero_error,
        assignments_checked: checked,
        rate: strategy.rate(),
        bound: strategy.bound(),
        algebraic_certificate,
        per_user_decoded,
    })
}
