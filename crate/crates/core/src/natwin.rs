//! Windowed analyses of subsets of `{1, .., N}`: gap bounds, runs,
//! piecewise witnesses, arithmetic progressions, and finite embeddability.
//!
//! Every verdict is relative to the window. A bound certified here says
//! nothing about elements beyond the horizon, and the operations are
//! phrased to under-claim: unverifiable tail regions make [`WindowSet::gap_bound`]
//! return `None` rather than inflate the bound.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

/// Largest supported horizon.
pub const MAX_HORIZON: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NatwinError {
    #[error("horizon must be between 1 and {MAX_HORIZON}, got {0}")]
    HorizonOutOfRange(u64),
    #[error("element {element} outside window [1, {horizon}]")]
    ElementOutOfRange { element: u64, horizon: u64 },
    #[error("piece bound {m} exceeds horizon {horizon}")]
    PieceBeyondHorizon { m: u64, horizon: u64 },
    #[error("doubled piece 2*{m} exceeds horizon {horizon}")]
    DoubledPieceBeyondHorizon { m: u64, horizon: u64 },
    #[error("malformed window set text: {0}")]
    Parse(String),
    #[error("malformed window set binary: {0}")]
    Binary(String),
}

/// A subset of `{1, .., N}` as a packed bit vector; bit `k` holds `k + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct WindowSet {
    horizon: u64,
    words: Vec<u64>,
}

impl std::fmt::Debug for WindowSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WindowSet(N={}, |A|={})", self.horizon, self.len())
    }
}

impl WindowSet {
    pub fn empty(horizon: u64) -> Result<Self, NatwinError> {
        if !(1..=MAX_HORIZON).contains(&horizon) {
            return Err(NatwinError::HorizonOutOfRange(horizon));
        }
        let words = vec![0u64; horizon.div_ceil(64) as usize];
        Ok(WindowSet { horizon, words })
    }

    pub fn from_elements(
        horizon: u64,
        elements: impl IntoIterator<Item = u64>,
    ) -> Result<Self, NatwinError> {
        let mut w = Self::empty(horizon)?;
        for e in elements {
            w.try_insert(e)?;
        }
        Ok(w)
    }

    /// Inclusive ranges; they may arrive in any order but must not overlap.
    pub fn from_ranges(horizon: u64, ranges: &[(u64, u64)]) -> Result<Self, NatwinError> {
        let mut w = Self::empty(horizon)?;
        for &(a, b) in ranges {
            if a < 1 || a > b {
                return Err(NatwinError::Parse(format!("bad range {a}-{b}")));
            }
            if b > horizon {
                return Err(NatwinError::ElementOutOfRange {
                    element: b,
                    horizon,
                });
            }
            for e in a..=b {
                w.insert(e);
            }
        }
        Ok(w)
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn contains(&self, element: u64) -> bool {
        if element < 1 || element > self.horizon {
            return false;
        }
        let k = element - 1;
        self.words[(k / 64) as usize] >> (k % 64) & 1 == 1
    }

    pub fn insert(&mut self, element: u64) {
        self.try_insert(element).expect("element within window");
    }

    pub fn try_insert(&mut self, element: u64) -> Result<(), NatwinError> {
        if element < 1 || element > self.horizon {
            return Err(NatwinError::ElementOutOfRange {
                element,
                horizon: self.horizon,
            });
        }
        let k = element - 1;
        self.words[(k / 64) as usize] |= 1 << (k % 64);
        Ok(())
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<u64> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i as u64 * 64 + w.trailing_zeros() as u64 + 1);
            }
        }
        None
    }

    pub fn last(&self) -> Option<u64> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i as u64 * 64 + 63 - w.leading_zeros() as u64 + 1);
            }
        }
        None
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let base = i as u64 * 64;
            std::iter::successors(if word == 0 { None } else { Some(word) }, |&w| {
                let next = w & (w - 1);
                (next != 0).then_some(next)
            })
            .map(move |w| base + w.trailing_zeros() as u64 + 1)
        })
    }

    /// Re-house the same elements under a larger horizon.
    pub fn with_horizon(&self, horizon: u64) -> Result<Self, NatwinError> {
        if horizon < self.last().unwrap_or(1) {
            return Err(NatwinError::HorizonOutOfRange(horizon));
        }
        let mut out = Self::empty(horizon)?;
        let copy = self.words.len().min(out.words.len());
        out.words[..copy].copy_from_slice(&self.words[..copy]);
        Ok(out)
    }

    /// Smallest `b` certified by the covered region `[1, last]`: the first
    /// element is at most `b` and consecutive elements are at most `b`
    /// apart, so every length-`b` window starting at `x <= last - b` meets
    /// the set.
    ///
    /// Tail rule: windows past the last element are unverifiable
    /// truncation, so if the tail `N - last` exceeds the candidate the
    /// verdict is `None` instead of a bound the window cannot support.
    /// Extending the horizon with empty space can therefore turn a bound
    /// into `None`; that is deliberate under-claiming.
    pub fn gap_bound(&self) -> Option<u64> {
        self.gap_bound_report().bound
    }

    pub fn gap_bound_report(&self) -> GapBoundReport {
        let (Some(first), Some(last)) = (self.first(), self.last()) else {
            return GapBoundReport {
                bound: None,
                last_start_checked: None,
                tail_gap: self.horizon,
            };
        };
        let mut max_diff = 0u64;
        let mut prev = first;
        for e in self.elements().skip(1) {
            max_diff = max_diff.max(e - prev);
            prev = e;
        }
        let candidate = first.max(max_diff).max(1);
        let tail_gap = self.horizon - last;
        if tail_gap > candidate {
            return GapBoundReport {
                bound: None,
                last_start_checked: None,
                tail_gap,
            };
        }
        GapBoundReport {
            bound: Some(candidate),
            last_start_checked: Some(last.saturating_sub(candidate)),
            tail_gap,
        }
    }

    /// Length of the longest block of consecutive members.
    pub fn max_block_run(&self) -> u64 {
        let mut best = 0u64;
        let mut cur = 0u64;
        for &word in &self.words {
            if word == 0 {
                cur = 0;
                continue;
            }
            if word == u64::MAX {
                cur += 64;
                best = best.max(cur);
                continue;
            }
            let mut w = word;
            for _ in 0..64 {
                if w & 1 == 1 {
                    cur += 1;
                    best = best.max(cur);
                } else {
                    cur = 0;
                }
                w >>= 1;
            }
        }
        best
    }

    /// First interval `[s, s+len-1]` inside the window such that every
    /// length-`bound` subwindow lying fully inside the interval meets the
    /// set. Intervals shorter than `bound` hold vacuously.
    pub fn ps_witness(&self, bound: u64, len: u64) -> Option<(u64, u64)> {
        if bound < 1 || len < 1 || len > self.horizon {
            return None;
        }
        if len <= bound {
            return Some((1, len));
        }
        // Window starts y = 0..=N-bound are "good" when {y+1, .., y+bound}
        // meets the set; the interval needs len-bound+1 consecutive goods.
        let needed = len - bound + 1;
        let mut in_window = 0u64;
        for e in 1..=bound.min(self.horizon) {
            in_window += self.contains(e) as u64;
        }
        let mut run = 0u64;
        let mut y = 0u64;
        loop {
            if in_window > 0 {
                run += 1;
                if run == needed {
                    let start = y + 1 - (needed - 1);
                    return Some((start, start + len - 1));
                }
            } else {
                run = 0;
            }
            if y + bound >= self.horizon {
                return None;
            }
            in_window -= self.contains(y + 1) as u64;
            in_window += self.contains(y + bound + 1) as u64;
            y += 1;
        }
    }

    /// Lexicographically least `(a, d)` with `d >= 1` and all `k` terms
    /// `a, a+d, .., a+(k-1)d` in the set.
    pub fn find_ap(&self, k: u64) -> Option<(u64, u64)> {
        assert!(k >= 1, "progression length must be positive");
        if k == 1 {
            return self.first().map(|a| (a, 1));
        }
        for a in self.elements() {
            let max_d = (self.horizon - a) / (k - 1);
            'next_d: for d in 1..=max_d {
                for i in 1..k {
                    if !self.contains(a + i * d) {
                        continue 'next_d;
                    }
                }
                return Some((a, d));
            }
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapBoundReport {
    pub bound: Option<u64>,
    /// Largest window start actually certified; windows beyond the last
    /// element were excluded by the tail rule.
    pub last_start_checked: Option<u64>,
    /// Distance from the last element to the horizon.
    pub tail_gap: u64,
}

/// Every nonempty piece of `a` up to `m` shifts into `b`: since one shift
/// for the full piece works for all of its subsets, checking the full
/// piece decides the quantifier. Shifts that would overflow the horizon of
/// `b` count as missing witnesses.
pub fn finite_embeddable(a: &WindowSet, b: &WindowSet, m: u64) -> Result<bool, NatwinError> {
    if m > a.horizon() {
        return Err(NatwinError::PieceBeyondHorizon {
            m,
            horizon: a.horizon(),
        });
    }
    let piece: Vec<u64> = a.elements().take_while(|&e| e <= m).collect();
    Ok(piece_embeds(&piece, b))
}

fn piece_embeds(piece: &[u64], b: &WindowSet) -> bool {
    let Some(&max) = piece.last() else {
        return true; // no nonempty pieces to embed
    };
    (0..=b.horizon().saturating_sub(max)).any(|x| piece.iter().all(|&e| b.contains(e + x)))
}

/// Reference sweep for [`finite_embeddable`]: tries every nonempty subset
/// of the piece with its own shift. Exponential in the piece size; used to
/// validate the shortcut.
pub fn finite_embeddable_literal(
    a: &WindowSet,
    b: &WindowSet,
    m: u64,
) -> Result<bool, NatwinError> {
    if m > a.horizon() {
        return Err(NatwinError::PieceBeyondHorizon {
            m,
            horizon: a.horizon(),
        });
    }
    let piece: Vec<u64> = a.elements().take_while(|&e| e <= m).collect();
    assert!(
        piece.len() <= 20,
        "literal sweep is exponential in the piece size"
    );
    for sub in 1u32..1 << piece.len() {
        let chosen: Vec<u64> = piece
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if !piece_embeds(&chosen, b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Window probe of the doubled-piece example: the even numbers absorb a
/// shifted copy of every doubled piece `2F`, `F` inside `[1, m]`, while
/// containing no two consecutive integers.
#[derive(Debug, Clone, Serialize)]
pub struct DoublingProbeReport {
    pub horizon: u64,
    pub m: u64,
    /// Every doubled piece shifts into the evens inside the window.
    pub doubled_pieces_shift_into_evens: bool,
    /// One shift that works for the full doubled piece.
    pub shift_witness: Option<u64>,
    pub longest_even_run: u64,
    /// The evens fail plain thickness inside the window (no run of two).
    pub evens_not_thick_in_window: bool,
    /// Reminder that every verdict above is window-relative.
    pub scope: String,
}

impl DoublingProbeReport {
    pub fn passes(&self) -> bool {
        self.doubled_pieces_shift_into_evens && self.evens_not_thick_in_window
    }
}

pub fn example_3_4_probe(horizon: u64, m: u64) -> Result<DoublingProbeReport, NatwinError> {
    if m < 1 {
        return Err(NatwinError::Parse("piece bound must be at least 1".into()));
    }
    if 2 * m > horizon {
        return Err(NatwinError::DoubledPieceBeyondHorizon { m, horizon });
    }
    let evens = WindowSet::from_elements(horizon, (1..=horizon / 2).map(|i| 2 * i))?;
    // One shift for the full doubled piece {2, 4, .., 2m} settles every
    // sub-piece; record the first.
    let full_piece: Vec<u64> = (1..=m).map(|e| 2 * e).collect();
    let shift_witness =
        (0..=horizon - 2 * m).find(|&x| full_piece.iter().all(|&e| evens.contains(e + x)));
    let longest_even_run = evens.max_block_run();
    Ok(DoublingProbeReport {
        horizon,
        m,
        doubled_pieces_shift_into_evens: shift_witness.is_some(),
        shift_witness,
        longest_even_run,
        evens_not_thick_in_window: longest_even_run < 2,
        scope: format!("within [1, {horizon}]"),
    })
}

// --- file formats ---

/// Run-length text: `"N; a1-b1,a2-b2,.."` with maximal runs ascending;
/// singleton runs print as a bare number. The empty set prints as `"N;"`.
pub fn to_rle_text(w: &WindowSet) -> String {
    let mut out = format!("{};", w.horizon());
    let mut runs = Vec::new();
    let mut current: Option<(u64, u64)> = None;
    for e in w.elements() {
        current = match current {
            Some((a, b)) if e == b + 1 => Some((a, e)),
            Some(done) => {
                runs.push(done);
                Some((e, e))
            }
            None => Some((e, e)),
        };
    }
    runs.extend(current);
    if !runs.is_empty() {
        out.push(' ');
        let mut first = true;
        for (a, b) in runs {
            if !first {
                out.push(',');
            }
            if a == b {
                let _ = write!(out, "{a}");
            } else {
                let _ = write!(out, "{a}-{b}");
            }
            first = false;
        }
    }
    out
}

pub fn from_rle_text(text: &str) -> Result<WindowSet, NatwinError> {
    let text = text.trim();
    let (head, rest) = text
        .split_once(';')
        .ok_or_else(|| NatwinError::Parse("missing ';' after the horizon".into()))?;
    let horizon: u64 = head
        .trim()
        .parse()
        .map_err(|e| NatwinError::Parse(format!("bad horizon: {e}")))?;
    let mut w = WindowSet::empty(horizon)?;
    let rest = rest.trim();
    if rest.is_empty() {
        return Ok(w);
    }
    let mut prev_end: Option<u64> = None;
    for part in rest.split(',') {
        let part = part.trim();
        let (a, b) = match part.split_once('-') {
            Some((a, b)) => (
                a.trim()
                    .parse()
                    .map_err(|e| NatwinError::Parse(format!("bad run start: {e}")))?,
                b.trim()
                    .parse()
                    .map_err(|e| NatwinError::Parse(format!("bad run end: {e}")))?,
            ),
            None => {
                let v: u64 = part
                    .parse()
                    .map_err(|e| NatwinError::Parse(format!("bad element: {e}")))?;
                (v, v)
            }
        };
        if a < 1 || a > b {
            return Err(NatwinError::Parse(format!("bad run {part:?}")));
        }
        if let Some(p) = prev_end {
            // maximal runs: the next one must leave a gap
            if a <= p + 1 {
                return Err(NatwinError::Parse(format!(
                    "runs must be ascending and separated, got {part:?} after end {p}"
                )));
            }
        }
        if b > horizon {
            return Err(NatwinError::ElementOutOfRange {
                element: b,
                horizon,
            });
        }
        for e in a..=b {
            w.insert(e);
        }
        prev_end = Some(b);
    }
    Ok(w)
}

/// Raw bitset: 8-byte little-endian horizon, then `ceil(N/8)` bytes; bit
/// `j` of byte `i` holds element `8i + j + 1`. Padding bits must be zero.
pub fn to_binary(w: &WindowSet) -> Vec<u8> {
    let byte_len = w.horizon().div_ceil(8) as usize;
    let mut out = Vec::with_capacity(8 + byte_len);
    out.extend_from_slice(&w.horizon().to_le_bytes());
    let mut bytes = vec![0u8; byte_len];
    for e in w.elements() {
        let k = e - 1;
        bytes[(k / 8) as usize] |= 1 << (k % 8);
    }
    out.extend_from_slice(&bytes);
    out
}

pub fn from_binary(data: &[u8]) -> Result<WindowSet, NatwinError> {
    if data.len() < 8 {
        return Err(NatwinError::Binary("missing horizon header".into()));
    }
    let horizon = u64::from_le_bytes(data[..8].try_into().expect("eight bytes"));
    let mut w = WindowSet::empty(horizon)?;
    let byte_len = horizon.div_ceil(8) as usize;
    let body = &data[8..];
    if body.len() != byte_len {
        return Err(NatwinError::Binary(format!(
            "expected {byte_len} data bytes for horizon {horizon}, got {}",
            body.len()
        )));
    }
    for (i, &byte) in body.iter().enumerate() {
        for j in 0..8u64 {
            if byte >> j & 1 == 1 {
                let element = i as u64 * 8 + j + 1;
                if element > horizon {
                    return Err(NatwinError::Binary(
                        "padding bits beyond horizon set".into(),
                    ));
                }
                w.insert(element);
            }
        }
    }
    Ok(w)
}
