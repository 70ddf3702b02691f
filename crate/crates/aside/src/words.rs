use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use weights_core::Weights;

use crate::points::point;
use crate::strip::{IntersectionPoint, Kind, Piece, Strip, Q};
use crate::AsideError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn of(x: i64) -> Self {
        if x > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// One piece of one curve, traversed with (`Plus`) or against (`Minus`) the
/// orientation of the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub curve: i64,
    pub piece: Piece,
    pub sign: Sign,
}

impl Letter {
    pub fn arc(curve: i64, sign: Sign) -> Self {
        Letter { curve, piece: Piece::Arc, sign }
    }

    pub fn s_plus(curve: i64, sign: Sign) -> Self {
        Letter { curve, piece: Piece::SPlus, sign }
    }

    pub fn s_minus(curve: i64, sign: Sign) -> Self {
        Letter { curve, piece: Piece::SMinus, sign }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { "+" } else { "-" };
        match self.piece {
            Piece::Arc => write!(f, "C_{}({s})", self.curve),
            Piece::SPlus => write!(f, "s_{{{}+}}({s})", self.curve),
            Piece::SMinus => write!(f, "s_{{{}-}}({s})", self.curve),
        }
    }
}

/// The boundary of a polygon read as a cyclic word. `corners[b]` is the
/// marked point between block `b` and block `b + 1`, where a block is a
/// maximal run of letters on one curve; the last corner closes the word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscWord {
    pub letters: Vec<Letter>,
    pub corners: Vec<Kind>,
}

impl DiscWord {
    pub fn new(letters: Vec<Letter>, corners: Vec<Kind>) -> Self {
        DiscWord { letters, corners }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter index ranges of the blocks.
    pub fn blocks(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.letters.len() {
            if i == self.letters.len() || self.letters[i].curve != self.letters[start].curve {
                out.push(start..i);
                start = i;
            }
        }
        out
    }
}

impl fmt::Display for DiscWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RejectReason {
    NonIncreasingSubscripts,
    ThreeConsecutiveSegments,
    SegmentOnly,
    ArcWordNotTriangle,
    IsolatedArc,
    ArcEndpoints,
    MultipleArcPairs,
    MissingCorner { corner: usize },
    LiftMismatch,
    Coverage { block: usize },
    NotConvex { corner: usize },
    EnclosesPuncture { height: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }
}

fn malformed(word: &DiscWord, strip: &Strip) -> Option<String> {
    if word.is_empty() {
        return Some("empty word".into());
    }
    if let Some(l) = word.letters.iter().find(|l| strip.check_index(l.curve).is_err()) {
        return Some(format!("curve {} out of range", l.curve));
    }
    let blocks = word.blocks();
    if blocks.len() < 2 {
        return Some("a polygon needs at least two blocks".into());
    }
    if blocks.len() != word.corners.len() {
        return Some(format!("{} blocks but {} corners", blocks.len(), word.corners.len()));
    }
    for block in &blocks {
        let letters = &word.letters[block.clone()];
        let sign = letters[0].sign;
        if letters.iter().any(|l| l.sign != sign) {
            return Some(format!("mixed signs on curve {}", letters[0].curve));
        }
        for pair in letters.windows(2) {
            if pair[1].piece.index() - pair[0].piece.index() != sign.value() {
                return Some(format!("{} does not follow {}", pair[1], pair[0]));
            }
        }
    }
    None
}

fn named_rules(word: &DiscWord) -> Option<RejectReason> {
    let letters = &word.letters;
    if letters.windows(2).any(|p| p[1].curve < p[0].curve) {
        return Some(RejectReason::NonIncreasingSubscripts);
    }
    if letters.windows(3).any(|t| t.iter().all(|l| l.piece.is_segment())) {
        return Some(RejectReason::ThreeConsecutiveSegments);
    }
    let arcs: Vec<usize> = (0..letters.len()).filter(|&i| letters[i].piece == Piece::Arc).collect();
    if arcs.is_empty() {
        return Some(RejectReason::SegmentOnly);
    }
    if arcs.len() == letters.len() {
        return (letters.len() != 3).then_some(RejectReason::ArcWordNotTriangle);
    }
    let n = letters.len();
    let is_arc = |i: usize| letters[i % n].piece == Piece::Arc;
    if arcs.iter().any(|&i| !is_arc(i + 1) && !is_arc(i + n - 1)) {
        return Some(RejectReason::IsolatedArc);
    }
    if is_arc(0) && is_arc(n - 1) {
        return Some(RejectReason::ArcEndpoints);
    }
    if arcs.len() > 2 {
        return Some(RejectReason::MultipleArcPairs);
    }
    None
}

/// Parameters of a corner on the two curves it joins, in block order, and the
/// lift of the outgoing block relative to the incoming one.
fn corner_on(strip: &Strip, u: i64, v: i64, kind: Kind) -> Option<(Q, Q, i64)> {
    let (lo, hi) = (u.min(v), u.max(v));
    if u == v || !strip.exists(lo, hi, kind) {
        return None;
    }
    let (t_lo, t_hi, rel) = strip.corner_params(lo, hi, kind);
    Some(if u < v { (t_lo, t_hi, -rel) } else { (t_hi, t_lo, rel) })
}

fn tangent_cross(strip: &Strip, a: (i64, Piece, Sign), b: (i64, Piece, Sign)) -> i64 {
    match (a.1, b.1) {
        (Piece::Arc, Piece::Arc) => a.2.value() * b.2.value() * (b.0 - a.0).signum(),
        (pa, pb) if pa.is_segment() && pb.is_segment() => {
            let (ax, ay) = strip.segment_direction(a.0, pa);
            let (bx, by) = strip.segment_direction(b.0, pb);
            let (sa, sb) = (a.2.value(), b.2.value());
            (sa * ax) * (sb * by) - (sa * ay) * (sb * bx)
        }
        _ => 0,
    }
}

struct Block {
    curve: i64,
    t_in: Q,
    t_out: Q,
    lift: i64,
}

fn geometry(strip: &Strip, word: &DiscWord, base_lift: i64) -> Option<RejectReason> {
    let ranges = word.blocks();
    let nb = ranges.len();
    let first = |b: usize| word.letters[ranges[b].start];
    let last = |b: usize| word.letters[ranges[b].end - 1];

    let mut blocks: Vec<Block> = ranges
        .iter()
        .map(|r| Block { curve: word.letters[r.start].curve, t_in: Q::from(0), t_out: Q::from(0), lift: 0 })
        .collect();
    blocks[0].lift = base_lift;
    for c in 0..nb {
        let next = (c + 1) % nb;
        let (u, v) = (blocks[c].curve, blocks[next].curve);
        let Some((t_u, t_v, rel)) = corner_on(strip, u, v, word.corners[c]) else {
            return Some(RejectReason::MissingCorner { corner: c });
        };
        if Piece::at(t_u) != last(c).piece || Piece::at(t_v) != first(next).piece {
            return Some(RejectReason::MissingCorner { corner: c });
        }
        blocks[c].t_out = t_u;
        blocks[next].t_in = t_v;
        let lift = blocks[c].lift + rel;
        if next == 0 {
            if lift != base_lift {
                return Some(RejectReason::LiftMismatch);
            }
        } else {
            blocks[next].lift = lift;
        }
    }

    for (b, block) in blocks.iter().enumerate() {
        let dir = (block.t_out - block.t_in).numer().signum();
        let sign = first(b).sign;
        if dir != sign.value() {
            return Some(RejectReason::Coverage { block: b });
        }
        let (p_in, p_out) = (Piece::at(block.t_in).index(), Piece::at(block.t_out).index());
        let expected: Vec<i64> = if dir > 0 { (p_in..=p_out).collect() } else { (p_out..=p_in).rev().collect() };
        let actual: Vec<i64> = word.letters[ranges[b].clone()].iter().map(|l| l.piece.index()).collect();
        if expected != actual {
            return Some(RejectReason::Coverage { block: b });
        }
    }

    for c in 0..nb {
        let next = (c + 1) % nb;
        let a = last(c);
        let b = first(next);
        if tangent_cross(strip, (a.curve, a.piece, a.sign), (b.curve, b.piece, b.sign)) >= 0 {
            return Some(RejectReason::NotConvex { corner: c });
        }
    }

    winding(strip, word, &blocks, &ranges).map(|height| RejectReason::EnclosesPuncture { height })
}

/// Height of a puncture with nonzero winding number, if any. Arcs stay in
/// `Re <= 0`, so only segment edges can cross the ray `Re > 0` from a
/// puncture on the imaginary axis.
fn winding(strip: &Strip, word: &DiscWord, blocks: &[Block], ranges: &[std::ops::Range<usize>]) -> Option<i64> {
    let mut edges: Vec<((Q, Q), (Q, Q))> = Vec::new();
    for (block, range) in blocks.iter().zip(ranges) {
        for letter in &word.letters[range.clone()] {
            if letter.piece == Piece::Arc {
                continue;
            }
            let lo = Q::from(letter.piece.index());
            let hi = lo + 1;
            let clamp = |t: Q| t.max(lo).min(hi);
            let (ta, tb) = (clamp(block.t_in), clamp(block.t_out));
            let (xa, ya) = strip.point_at(block.curve, block.lift, ta);
            let (xb, yb) = strip.point_at(block.curve, block.lift, tb);
            edges.push(((xa.unwrap(), ya), (xb.unwrap(), yb)));
        }
    }
    let period = strip.period();
    let mut heights = std::collections::BTreeSet::new();
    for ((_, ya), (_, yb)) in &edges {
        let (lo, hi) = (ya.min(yb), ya.max(yb));
        let mut a = (lo / period).ceil().to_integer();
        while Q::from(a * period) <= *hi {
            heights.insert(a * period);
            a += 1;
        }
    }
    heights.into_iter().find(|&h| {
        let y = Q::from(h);
        let mut wn = 0;
        for ((xa, ya), (xb, yb)) in &edges {
            let up = *ya <= y && y < *yb;
            let down = *yb <= y && y < *ya;
            if up || down {
                let x = *xa + (y - ya) * (xb - xa) / (yb - ya);
                if x > Q::from(0) {
                    wn += if up { 1 } else { -1 };
                }
            }
        }
        wn != 0
    })
}

/// Classifies a word as the boundary of an immersed convex polygon in the
/// punctured strip, or names the first rule it breaks.
pub fn classify_disc_word(w: &Weights, word: &DiscWord) -> Result<Verdict, AsideError> {
    classify_disc_word_shifted(w, word, 0)
}

/// As [`classify_disc_word`], with the first block placed `base_lift` periods
/// up.
pub fn classify_disc_word_shifted(w: &Weights, word: &DiscWord, base_lift: i64) -> Result<Verdict, AsideError> {
    let strip = Strip::new(w)?;
    classify_in(&strip, word, base_lift)
}

fn classify_in(strip: &Strip, word: &DiscWord, base_lift: i64) -> Result<Verdict, AsideError> {
    if let Some(msg) = malformed(word, strip) {
        return Err(AsideError::MalformedWord(msg));
    }
    if let Some(r) = named_rules(word) {
        return Ok(Verdict::Reject(r));
    }
    Ok(match geometry(strip, word, base_lift) {
        Some(r) => Verdict::Reject(r),
        None => Verdict::Accept,
    })
}

fn block_letters(curve: i64, t_in: Q, t_out: Q) -> Option<Vec<Letter>> {
    let dir = (t_out - t_in).numer().signum();
    if dir == 0 {
        return None;
    }
    let (p_in, p_out) = (Piece::at(t_in).index(), Piece::at(t_out).index());
    let sign = Sign::of(dir);
    let mut out = Vec::new();
    let mut p = p_in;
    loop {
        out.push(Letter { curve, piece: Piece::from_index(p), sign });
        if p == p_out {
            return Some(out);
        }
        p += dir;
    }
}

/// The unique word on strictly increasing `curves` whose corners are `kinds`,
/// the last kind closing the polygon. `None` when a corner does not exist or a
/// block would be empty.
pub fn word_from_corners(strip: &Strip, curves: &[i64], kinds: &[Kind]) -> Option<DiscWord> {
    let nb = curves.len();
    let mut t_in = vec![Q::from(0); nb];
    let mut t_out = vec![Q::from(0); nb];
    for c in 0..nb {
        let next = (c + 1) % nb;
        let (tu, tv, _) = corner_on(strip, curves[c], curves[next], kinds[c])?;
        t_out[c] = tu;
        t_in[next] = tv;
    }
    let mut letters = Vec::new();
    for b in 0..nb {
        letters.extend(block_letters(curves[b], t_in[b], t_out[b])?);
    }
    Some(DiscWord { letters, corners: kinds.to_vec() })
}

/// `m_2(p1, p0)` for `p0` in `Hom(L_i, L_j)` and `p1` in `Hom(L_j, L_k)`:
/// one term per accepted triangle, with coefficient `+1`.
pub fn m2_product(
    w: &Weights,
    p1: &IntersectionPoint,
    p0: &IntersectionPoint,
) -> Result<Vec<(i64, IntersectionPoint)>, AsideError> {
    let strip = Strip::new(w)?;
    if p0.k != p1.j {
        return Err(AsideError::EndpointMismatch(p0.j, p0.k, p1.j, p1.k));
    }
    for p in [p0, p1] {
        if p.j >= p.k || !strip.exists(p.j, p.k, p.kind) {
            return Err(AsideError::NoSuchPoint(p.j, p.k, p.kind));
        }
    }
    let (i, j, k) = (p0.j, p0.k, p1.k);
    let mut out = Vec::new();
    for kind in [Kind::Arc, Kind::SegPM, Kind::SegMP] {
        if !strip.exists(i, k, kind) {
            continue;
        }
        let Some(word) = word_from_corners(&strip, &[i, j, k], &[p0.kind, p1.kind, kind]) else {
            continue;
        };
        if classify_in(&strip, &word, 0)?.is_accept() {
            out.push((1, point(&strip, i, k, kind)?));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HigherProductReport {
    pub weights: Weights,
    pub max_word_len: usize,
    /// Candidate words classified, by letter count.
    pub examined_by_length: BTreeMap<usize, u64>,
    pub accepted_by_length: BTreeMap<usize, u64>,
    /// Accepted words, by number of corners.
    pub accepted_by_corners: BTreeMap<usize, u64>,
    pub pass: bool,
}

#[derive(Default)]
struct Tally {
    examined: BTreeMap<usize, u64>,
    accepted: BTreeMap<usize, u64>,
    corners: BTreeMap<usize, u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (mine, theirs) in [
            (&mut self.examined, other.examined),
            (&mut self.accepted, other.accepted),
            (&mut self.corners, other.corners),
        ] {
            for (k, v) in theirs {
                *mine.entry(k).or_insert(0) += v;
            }
        }
        self
    }
}

struct Search<'a> {
    strip: &'a Strip,
    max_len: usize,
    curves: Vec<i64>,
    kinds: Vec<Kind>,
    /// Parameter where each block after the first starts.
    t_in: Vec<Q>,
    /// Letters of each completed middle block.
    middle: Vec<Vec<Letter>>,
    tally: Tally,
}

const KINDS: [Kind; 3] = [Kind::Arc, Kind::SegPM, Kind::SegMP];

impl Search<'_> {
    fn middle_letters(&self) -> usize {
        self.middle.iter().map(Vec::len).sum()
    }

    fn close(&mut self) {
        if self.curves.len() < 2 {
            return;
        }
        for kind in KINDS {
            self.kinds.push(kind);
            if let Some(word) = word_from_corners(self.strip, &self.curves, &self.kinds) {
                if word.len() <= self.max_len {
                    let verdict = classify_in(self.strip, &word, 0).expect("enumerated words are well formed");
                    *self.tally.examined.entry(word.len()).or_insert(0) += 1;
                    if verdict.is_accept() {
                        *self.tally.accepted.entry(word.len()).or_insert(0) += 1;
                        *self.tally.corners.entry(word.corners.len()).or_insert(0) += 1;
                    }
                }
            }
            self.kinds.pop();
        }
    }

    /// Rejections that no completion can undo.
    fn prefix_dead(&self) -> bool {
        let flat: Vec<&Letter> = self.middle.iter().flatten().collect();
        if flat.iter().filter(|l| l.piece == Piece::Arc).count() > 3 {
            return true;
        }
        if flat.windows(3).any(|t| t.iter().all(|l| l.piece.is_segment())) {
            return true;
        }
        let m = self.middle.len();
        if m >= 2 {
            let a = self.middle[m - 2].last().unwrap();
            let b = self.middle[m - 1][0];
            if tangent_cross(self.strip, (a.curve, a.piece, a.sign), (b.curve, b.piece, b.sign)) >= 0 {
                return true;
            }
        }
        false
    }

    fn extend(&mut self) {
        self.close();
        // First and last blocks take at least one letter each.
        if self.middle_letters() + 2 + usize::from(self.curves.len() >= 2) > self.max_len {
            return;
        }
        let u = *self.curves.last().unwrap();
        for v in u + 1..self.strip.curve_count() {
            for kind in KINDS {
                let Some((tu, tv, _)) = corner_on(self.strip, u, v, kind) else {
                    continue;
                };
                let mut pushed_middle = false;
                if self.curves.len() >= 2 {
                    let t_in = *self.t_in.last().unwrap();
                    let Some(letters) = block_letters(u, t_in, tu) else {
                        continue;
                    };
                    self.middle.push(letters);
                    pushed_middle = true;
                    if self.middle_letters() + 2 > self.max_len || self.prefix_dead() {
                        self.middle.pop();
                        continue;
                    }
                }
                self.curves.push(v);
                self.kinds.push(kind);
                self.t_in.push(tv);
                self.extend();
                self.curves.pop();
                self.kinds.pop();
                self.t_in.pop();
                if pushed_middle {
                    self.middle.pop();
                }
            }
        }
    }
}

/// Enumerates every polygon word with at most `max_word_len` letters and
/// checks that each accepted one is a triangle.
pub fn higher_products_vanish(w: &Weights, max_word_len: usize) -> Result<HigherProductReport, AsideError> {
    if max_word_len < 6 {
        return Err(AsideError::WordBound(max_word_len));
    }
    let strip = Strip::new(w)?;
    let tally = (0..strip.curve_count())
        .into_par_iter()
        .map(|i0| {
            let mut search = Search {
                strip: &strip,
                max_len: max_word_len,
                curves: vec![i0],
                kinds: Vec::new(),
                t_in: Vec::new(),
                middle: Vec::new(),
                tally: Tally::default(),
            };
            search.extend();
            search.tally
        })
        .reduce(Tally::default, Tally::merge);
    let pass = tally.corners.keys().all(|&c| c == 3);
    Ok(HigherProductReport {
        weights: w.clone(),
        max_word_len,
        examined_by_length: tally.examined,
        accepted_by_length: tally.accepted,
        accepted_by_corners: tally.corners,
        pass,
    })
}
