//! Exact minimum distance by exhaustive codeword enumeration.
//!
//! Codewords are kept in packed form and updated by one row addition per
//! step:
//!
//! - GF(2): one bit per coordinate, 64 coordinates per word; column `c` is
//!   bit `c % 64` of word `c / 64`. Messages follow the binary reflected Gray
//!   code, so every step is a single XOR of one packed row.
//! - GF(4): two GF(2) planes (`1` and `a` components). Each GF(4) row `r`
//!   contributes the binary generators `r` and `a r`, so the same Gray walk
//!   applies and the weight is `popcount(lo | hi)`.
//! - GF(3): two indicator planes (`== 1`, `== 2`) with bitsliced addition.
//! - GF(5): one byte per coordinate, eight lanes per word, SWAR addition.
//!   GF(3) and GF(5) messages advance in odometer order; each increment adds
//!   one row, plus one per carry.
//!
//! Only messages whose highest nonzero symbol is 1 are visited (scalar
//! multiples share a weight). The message space splits into [`Shard`]s: one
//! per leading row, optionally subdivided by fixing the top free symbols.
//! Shards are independent and the minimum over them is the distance, so any
//! partition of the work yields the same exact answer.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicBool, Ordering};

use super::GenMatrix;
use crate::galois::Field;
use crate::{Error, Result};

const CHECK_INTERVAL: u64 = 1 << 16;

/// Largest dimension enumerated per field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceBudget {
    pub gf2: usize,
    pub gf3: usize,
    pub gf4: usize,
    pub gf5: usize,
}

impl Default for DistanceBudget {
    fn default() -> Self {
        DistanceBudget { gf2: 31, gf3: 18, gf4: 14, gf5: 14 }
    }
}

impl DistanceBudget {
    /// Same dimension limit for every field.
    pub fn uniform(k: usize) -> Self {
        DistanceBudget { gf2: k, gf3: k, gf4: k, gf5: k }
    }

    pub fn limit(&self, field: Field) -> usize {
        match field.order() {
            2 => self.gf2,
            3 => self.gf3,
            4 => self.gf4,
            _ => self.gf5,
        }
    }

    pub fn allows(&self, field: Field, k: usize) -> bool {
        k <= self.limit(field)
    }
}

/// A minimum weight. `exact` is false when enumeration stopped early at a
/// word of weight at most the requested threshold; `weight` is then only an
/// upper bound on the distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Distance {
    pub weight: usize,
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DistanceOptions {
    /// Stop as soon as a nonzero codeword of at most this weight appears.
    pub early_exit: Option<usize>,
    pub budget: DistanceBudget,
    /// Recompute the running word from scratch every 2^16 steps and fail on
    /// any divergence.
    pub cross_check: bool,
}

/// Anything able to compute minimum distances; implemented sequentially
/// here and with a worker pool by the `qcforge` crate.
pub trait DistanceEngine {
    fn budget(&self) -> DistanceBudget;

    fn min_distance(&self, g: &GenMatrix, early_exit: Option<usize>) -> Result<Distance>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SequentialEngine {
    pub budget: DistanceBudget,
}

impl DistanceEngine for SequentialEngine {
    fn budget(&self) -> DistanceBudget {
        self.budget
    }

    fn min_distance(&self, g: &GenMatrix, early_exit: Option<usize>) -> Result<Distance> {
        let opts = DistanceOptions { early_exit, budget: self.budget, cross_check: false };
        DistanceKernel::new(g, &opts.budget)?.run_all(&opts)
    }
}

/// Exact minimum distance with the default budget.
pub fn min_distance_exact(g: &GenMatrix, early_exit: Option<usize>) -> Result<Distance> {
    SequentialEngine::default().min_distance(g, early_exit)
}

/// Packs a GF(2) vector, column `c` at bit `c % 64` of word `c / 64`.
pub fn pack_gf2(v: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; v.len().div_ceil(64)];
    for (c, &b) in v.iter().enumerate() {
        if b & 1 == 1 {
            out[c / 64] |= 1 << (c % 64);
        }
    }
    out
}

pub fn unpack_gf2(words: &[u64], n: usize) -> Vec<u8> {
    (0..n).map(|c| ((words[c / 64] >> (c % 64)) & 1) as u8).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Layout {
    Gf2,
    Gf4,
    Gf3,
    Gf5,
}

/// A slice of the message space: a fixed combination of rows plus the
/// lowest `free` message symbols left to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shard {
    /// `(message position, symbol)` pairs fixed for the whole shard.
    fixed: Vec<(usize, u8)>,
    /// Number of free symbols; binary digits for GF(2)/GF(4), field symbols
    /// for GF(3)/GF(5).
    free: usize,
}

impl Shard {
    pub fn free_symbols(&self) -> usize {
        self.free
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShardOutcome {
    pub min_weight: usize,
    pub steps: u64,
    /// Stopped at a word of weight at most the early-exit threshold.
    pub early: bool,
    /// Abandoned because the shared stop flag was raised.
    pub cancelled: bool,
}

/// Packed generator prepared for (possibly sharded) enumeration.
#[derive(Clone, Debug)]
pub struct DistanceKernel {
    layout: Layout,
    field: Field,
    n: usize,
    k: usize,
    // words per packed vector
    stride: usize,
    // packed generator rows; for GF(4) interleaved as r_0, a r_0, r_1, ...
    rows: Vec<u64>,
    // unpacked rows for shard start vectors and cross-checks
    dense: GenMatrix,
}

impl DistanceKernel {
    pub fn new(g: &GenMatrix, budget: &DistanceBudget) -> Result<Self> {
        let field = g.field();
        let k = g.rows();
        let limit = budget.limit(field);
        if k > limit {
            return Err(Error::BudgetExceeded { q: field.order(), dim: k, budget: limit });
        }
        let rank = g.rank();
        if rank != k {
            return Err(Error::RankDeficient { rows: k, rank });
        }
        let layout = match field.order() {
            2 => Layout::Gf2,
            3 => Layout::Gf3,
            4 => Layout::Gf4,
            _ => Layout::Gf5,
        };
        let n = g.cols();
        let stride = packed_len(layout, n);
        let mut rows = Vec::new();
        for r in g.row_iter() {
            rows.extend(pack(layout, r));
            if layout == Layout::Gf4 {
                let scaled: Vec<u8> = r.iter().map(|&c| field.mul(2, c)).collect();
                rows.extend(pack(layout, &scaled));
            }
        }
        Ok(DistanceKernel { layout, field, n, k, stride, rows, dense: g.clone() })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    fn binary(&self) -> bool {
        matches!(self.layout, Layout::Gf2 | Layout::Gf4)
    }

    /// Free symbols per message position: GF(4) positions carry two bits.
    fn symbols_per_row(&self) -> usize {
        if self.layout == Layout::Gf4 {
            2
        } else {
            1
        }
    }

    fn radix(&self) -> u8 {
        if self.binary() {
            2
        } else {
            self.field.order()
        }
    }

    /// Partition of the projective message space. Leading rows whose free
    /// part exceeds `max_free` symbols are split by fixing the top symbols.
    pub fn shards(&self, max_free: usize) -> Vec<Shard> {
        let spr = self.symbols_per_row();
        let radix = self.radix();
        let mut out = Vec::new();
        for lead in 0..self.k {
            // the lead row carries symbol 1; for GF(4) that is binary row 2*lead
            let fixed = vec![(lead * spr, 1u8)];
            let free = lead * spr;
            let split = free.saturating_sub(max_free);
            let count = (radix as u64).pow(split as u32);
            for prefix in 0..count {
                let mut fixed = fixed.clone();
                let mut p = prefix;
                for pos in (free - split)..free {
                    let digit = (p % radix as u64) as u8;
                    p /= radix as u64;
                    if digit != 0 {
                        fixed.push((pos, digit));
                    }
                }
                out.push(Shard { fixed, free: free - split });
            }
        }
        out
    }

    /// Minimum over every shard, in order.
    pub fn run_all(&self, opts: &DistanceOptions) -> Result<Distance> {
        if self.k == 0 {
            return Ok(Distance { weight: 0, exact: true });
        }
        let mut best = usize::MAX;
        for shard in self.shards(usize::MAX) {
            let out = self.run_shard(&shard, opts.early_exit, opts.cross_check, None)?;
            best = best.min(out.min_weight);
            if out.early {
                return Ok(Distance { weight: best, exact: false });
            }
        }
        Ok(Distance { weight: best, exact: true })
    }

    /// Unpacked codeword for a message given in shard coordinates.
    fn dense_word(&self, symbols: &[(usize, u8)]) -> Vec<u8> {
        let f = self.field;
        let mut msg = vec![0u8; self.k];
        for &(pos, s) in symbols {
            if self.layout == Layout::Gf4 {
                // binary position 2i is the 1-component, 2i+1 the a-component
                let bit = if pos % 2 == 0 { 1 } else { 2 };
                if s != 0 {
                    msg[pos / 2] ^= bit;
                }
            } else {
                msg[pos] = f.add(msg[pos], s);
            }
        }
        self.dense.encode(&msg)
    }

    fn packed_word(&self, symbols: &[(usize, u8)]) -> Vec<u64> {
        pack(self.layout, &self.dense_word(symbols))
    }

    /// Enumerates one shard. `stop` is polled every 2^16 steps; when it is
    /// set the shard returns with `cancelled`. When the early-exit threshold
    /// is hit, `stop` is raised for the sibling shards.
    pub fn run_shard(
        &self,
        shard: &Shard,
        early_exit: Option<usize>,
        cross_check: bool,
        stop: Option<&AtomicBool>,
    ) -> Result<ShardOutcome> {
        let start = self.packed_word(&shard.fixed);
        let threshold = early_exit.map_or(0, |e| e as u32);
        let early_enabled = early_exit.is_some();
        let ctx = WalkCtx { kernel: self, shard, threshold, early_enabled, cross_check, stop };
        let out = dispatch(self.stride, &ctx, &start)?;
        if out.early {
            if let Some(s) = stop {
                s.store(true, Ordering::Relaxed);
            }
        }
        Ok(out)
    }
}

fn packed_len(layout: Layout, n: usize) -> usize {
    match layout {
        Layout::Gf2 => n.div_ceil(64),
        Layout::Gf3 | Layout::Gf4 => 2 * n.div_ceil(64),
        Layout::Gf5 => n.div_ceil(8),
    }
}

fn pack(layout: Layout, v: &[u8]) -> Vec<u64> {
    let n = v.len();
    match layout {
        Layout::Gf2 => pack_gf2(v),
        Layout::Gf3 | Layout::Gf4 => {
            let w = n.div_ceil(64);
            let mut out = vec![0u64; 2 * w];
            for (c, &x) in v.iter().enumerate() {
                // GF(4): lo plane = 1-component, hi plane = a-component
                // GF(3): lo plane marks 1, hi plane marks 2
                let (lo, hi) = match layout {
                    Layout::Gf4 => (x & 1, x >> 1),
                    _ => ((x == 1) as u8, (x == 2) as u8),
                };
                out[c / 64] |= (lo as u64) << (c % 64);
                out[w + c / 64] |= (hi as u64) << (c % 64);
            }
            out
        }
        Layout::Gf5 => {
            let mut out = vec![0u64; n.div_ceil(8)];
            for (c, &x) in v.iter().enumerate() {
                out[c / 8] |= (x as u64) << (8 * (c % 8));
            }
            out
        }
    }
}

const LANE_LO: u64 = 0x0101_0101_0101_0101;
const LANE_HI: u64 = 0x8080_8080_8080_8080;

#[inline(always)]
fn add_into(layout: Layout, acc: &mut [u64], row: &[u64]) {
    match layout {
        Layout::Gf2 | Layout::Gf4 => {
            for (a, &r) in acc.iter_mut().zip(row) {
                *a ^= r;
            }
        }
        Layout::Gf3 => {
            let w = acc.len() / 2;
            let (ap_s, am_s) = acc.split_at_mut(w);
            let (bp_s, bm_s) = row.split_at(w);
            for i in 0..w {
                let (ap, am, bp, bm) = (ap_s[i], am_s[i], bp_s[i], bm_s[i]);
                let a0 = !(ap | am);
                let b0 = !(bp | bm);
                ap_s[i] = (a0 & bp) | (ap & b0) | (am & bm);
                am_s[i] = (a0 & bm) | (am & b0) | (ap & bp);
            }
        }
        Layout::Gf5 => {
            for (a, &r) in acc.iter_mut().zip(row) {
                let s = *a + r;
                let wrap = ((s + 0x7B * LANE_LO) & LANE_HI) >> 7;
                *a = s - 5 * wrap;
            }
        }
    }
}

#[inline(always)]
fn weight_of(layout: Layout, v: &[u64]) -> u32 {
    match layout {
        Layout::Gf2 => v.iter().map(|x| x.count_ones()).sum(),
        Layout::Gf3 | Layout::Gf4 => {
            let w = v.len() / 2;
            (0..w).map(|i| (v[i] | v[w + i]).count_ones()).sum()
        }
        Layout::Gf5 => v.iter().map(|&x| (((x + 0x7F * LANE_LO) | x) & LANE_HI).count_ones()).sum(),
    }
}

struct WalkCtx<'a> {
    kernel: &'a DistanceKernel,
    shard: &'a Shard,
    threshold: u32,
    early_enabled: bool,
    cross_check: bool,
    stop: Option<&'a AtomicBool>,
}

trait Packed: Clone {
    fn from_slice(s: &[u64]) -> Self;
    fn words(&self) -> &[u64];
    fn words_mut(&mut self) -> &mut [u64];
}

impl<const S: usize> Packed for [u64; S] {
    #[inline(always)]
    fn from_slice(s: &[u64]) -> Self {
        let mut a = [0u64; S];
        a.copy_from_slice(s);
        a
    }
    #[inline(always)]
    fn words(&self) -> &[u64] {
        self
    }
    #[inline(always)]
    fn words_mut(&mut self) -> &mut [u64] {
        self
    }
}

impl Packed for Vec<u64> {
    fn from_slice(s: &[u64]) -> Self {
        s.to_vec()
    }
    fn words(&self) -> &[u64] {
        self
    }
    fn words_mut(&mut self) -> &mut [u64] {
        self
    }
}

#[cfg(target_arch = "x86_64")]
fn has_popcnt() -> bool {
    use core::sync::atomic::AtomicU8;
    // 0 unknown, 1 absent, 2 present
    static CACHE: AtomicU8 = AtomicU8::new(0);
    match CACHE.load(Ordering::Relaxed) {
        0 => {
            #[allow(unused_unsafe)]
            let ecx = unsafe { core::arch::x86_64::__cpuid(1) }.ecx;
            let present = ecx & (1 << 23) != 0;
            CACHE.store(if present { 2 } else { 1 }, Ordering::Relaxed);
            present
        }
        v => v == 2,
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn walk_popcnt<V: Packed>(ctx: &WalkCtx<'_>, start: &[u64]) -> Result<ShardOutcome> {
    walk::<V>(ctx, start)
}

fn walk_best<V: Packed>(ctx: &WalkCtx<'_>, start: &[u64]) -> Result<ShardOutcome> {
    #[cfg(target_arch = "x86_64")]
    if has_popcnt() {
        // SAFETY: the CPU reports POPCNT support
        return unsafe { walk_popcnt::<V>(ctx, start) };
    }
    walk::<V>(ctx, start)
}

fn dispatch(stride: usize, ctx: &WalkCtx<'_>, start: &[u64]) -> Result<ShardOutcome> {
    macro_rules! fixed {
        ($($s:literal)*) => {
            match stride {
                $($s => walk_best::<[u64; $s]>(ctx, start),)*
                _ => walk_best::<Vec<u64>>(ctx, start),
            }
        };
    }
    fixed!(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16)
}

#[inline(always)]
fn walk<V: Packed>(ctx: &WalkCtx<'_>, start: &[u64]) -> Result<ShardOutcome> {
    let kernel = ctx.kernel;
    let layout = kernel.layout;
    let stride = kernel.stride;
    let free = ctx.shard.free;
    let rows: Vec<V> = (0..free).map(|i| V::from_slice(&kernel.rows[i * stride..(i + 1) * stride])).collect();
    let mut acc = V::from_slice(start);
    let mut best = weight_of(layout, acc.words());
    let mut out = ShardOutcome { min_weight: best as usize, steps: 0, early: false, cancelled: false };
    if ctx.early_enabled && best <= ctx.threshold {
        out.early = true;
        return Ok(out);
    }

    if kernel.binary() {
        let total: u64 = 1u64 << free;
        let mut i: u64 = 1;
        while i < total {
            let chunk_end = total.min((i | (CHECK_INTERVAL - 1)) + 1);
            while i < chunk_end {
                let flip = i.trailing_zeros() as usize;
                add_into(layout, acc.words_mut(), rows[flip].words());
                let w = weight_of(layout, acc.words());
                if w < best {
                    best = w;
                    if ctx.early_enabled && best <= ctx.threshold {
                        out.min_weight = best as usize;
                        out.steps = i;
                        out.early = true;
                        return Ok(out);
                    }
                }
                i += 1;
            }
            if ctx.cross_check {
                let gray = (i - 1) ^ ((i - 1) >> 1);
                let mut symbols = ctx.shard.fixed.clone();
                symbols.extend((0..free).filter(|b| (gray >> b) & 1 == 1).map(|b| (b, 1u8)));
                if kernel.packed_word(&symbols) != acc.words() {
                    return Err(Error::KernelMismatch { step: i - 1 });
                }
            }
            if ctx.stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
                out.cancelled = true;
                break;
            }
        }
        out.steps = i - 1;
    } else {
        let q = kernel.field.order();
        let mut digits = vec![0u8; free];
        let mut steps: u64 = 0;
        'outer: loop {
            for _ in 0..CHECK_INTERVAL {
                // odometer increment; each touched digit adds its row once
                let mut d = 0;
                loop {
                    if d == free {
                        break 'outer;
                    }
                    add_into(layout, acc.words_mut(), rows[d].words());
                    digits[d] += 1;
                    if digits[d] < q {
                        break;
                    }
                    digits[d] = 0;
                    d += 1;
                }
                steps += 1;
                let w = weight_of(layout, acc.words());
                if w < best {
                    best = w;
                    if ctx.early_enabled && best <= ctx.threshold {
                        out.min_weight = best as usize;
                        out.steps = steps;
                        out.early = true;
                        return Ok(out);
                    }
                }
            }
            if ctx.cross_check {
                let mut symbols = ctx.shard.fixed.clone();
                symbols.extend(digits.iter().enumerate().filter(|(_, &s)| s != 0).map(|(p, &s)| (p, s)));
                if kernel.packed_word(&symbols) != acc.words() {
                    return Err(Error::KernelMismatch { step: steps });
                }
            }
            if ctx.stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
                out.cancelled = true;
                break;
            }
        }
        out.steps = steps;
    }
    out.min_weight = best as usize;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2(rows: &[&str]) -> GenMatrix {
        let cols = rows[0].len();
        GenMatrix::from_rows(Field::GF2, cols, rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect())
    }

    #[test]
    fn small_codes() {
        let rep = GenMatrix::from_rows(Field::GF2, 9, vec![vec![1; 9]]);
        assert_eq!(min_distance_exact(&rep, None).unwrap(), Distance { weight: 9, exact: true });
        let ham = gf2(&["1101000", "0110100", "0011010", "0001101"]);
        assert_eq!(min_distance_exact(&ham, None).unwrap().weight, 3);
    }

    #[test]
    fn early_exit_flags_an_upper_bound() {
        let ham = gf2(&["1101000", "0110100", "0011010", "0001101"]);
        let d = min_distance_exact(&ham, Some(5)).unwrap();
        assert!(!d.exact && d.weight <= 5);
        let d = min_distance_exact(&ham, Some(2)).unwrap();
        assert_eq!(d, Distance { weight: 3, exact: true });
    }

    #[test]
    fn budget_and_rank_errors() {
        let ham = gf2(&["1101000", "0110100", "0011010", "0001101"]);
        let opts = DistanceBudget::uniform(3);
        assert!(matches!(DistanceKernel::new(&ham, &opts), Err(Error::BudgetExceeded { .. })));
        let dup = gf2(&["1100", "1100"]);
        assert!(matches!(min_distance_exact(&dup, None), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn packing_layout() {
        let mut v = vec![0u8; 130];
        v[0] = 1;
        v[64] = 1;
        v[129] = 1;
        let p = pack_gf2(&v);
        assert_eq!(p, vec![1, 1, 2]);
        assert_eq!(unpack_gf2(&p, 130), v);
    }

    #[test]
    fn gf5_lane_arithmetic() {
        let f = Field::GF5;
        for a in 0..5u8 {
            for b in 0..5u8 {
                let mut acc = pack(Layout::Gf5, &[a; 9]);
                let row = pack(Layout::Gf5, &[b; 9]);
                add_into(Layout::Gf5, &mut acc, &row);
                assert_eq!(acc, pack(Layout::Gf5, &[f.add(a, b); 9]));
                assert_eq!(weight_of(Layout::Gf5, &acc), if f.add(a, b) == 0 { 0 } else { 9 });
            }
        }
    }

    #[test]
    fn gf3_bitsliced_arithmetic() {
        let f = Field::GF3;
        for a in 0..3u8 {
            for b in 0..3u8 {
                let mut acc = pack(Layout::Gf3, &[a; 70]);
                let row = pack(Layout::Gf3, &[b; 70]);
                add_into(Layout::Gf3, &mut acc, &row);
                assert_eq!(acc, pack(Layout::Gf3, &[f.add(a, b); 70]));
            }
        }
    }

    #[test]
    fn shards_cover_the_projective_space() {
        for (field, k) in [(Field::GF2, 6), (Field::GF3, 4), (Field::GF4, 3), (Field::GF5, 3)] {
            let g = GenMatrix::identity(field, k);
            let kernel = DistanceKernel::new(&g, &DistanceBudget::default()).unwrap();
            let q = field.order() as u64;
            let expected = (q.pow(k as u32) - 1) / (q - 1);
            for max_free in [0, 1, 2, usize::MAX] {
                let visited: u64 = kernel
                    .shards(max_free)
                    .iter()
                    .map(|s| kernel.run_shard(s, None, true, None).unwrap().steps + 1)
                    .sum();
                assert_eq!(visited, expected, "{field} max_free={max_free}");
            }
        }
    }
}
