//! Planar rotation and reflection free self-similar sets: the generating
//! similitudes, the similarity dimension, symbolic words and cylinders,
//! stopping partitions, separation certification and the natural
//! self-similar measure.
//!
//! Every map has the form `x -> ratio * x + translation` with
//! `ratio` in (0, 1); compositions therefore stay axes-aligned and a
//! cylinder is fully described by its composed ratio and translation.

use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, Rat};
use crate::geom::{Point, Rect};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Default cap on the number of cylinders any enumeration may emit.
/// An explicit error beats silent truncation: the mass-conservation
/// invariants only hold for exhaustive partitions.
pub const DEFAULT_BUDGET: usize = 10_000_000;

const MORAN_TOL: f64 = 1e-13;
const MORAN_MAX_ITER: u32 = 200;

/// Chaos-game steps discarded before recording points. Contraction makes
/// the initialization error at most `rho_max^64 * diam`.
const CHAOS_BURN_IN: usize = 64;

/// Total box cap for separation certification before it gives up.
const SEPARATION_BOX_CAP: usize = 2_000_000;

/// One contracting similitude `x -> ratio * x + translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similitude {
    ratio: f64,
    translation: Point,
}

impl Similitude {
    pub fn new(ratio: f64, translation: Point) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::RatioOutOfRange {
                index: 0,
                value: ratio,
            });
        }
        Ok(Similitude { ratio, translation })
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn translation(&self) -> Point {
        self.translation
    }

    pub fn apply(&self, p: Point) -> Point {
        p.scale(self.ratio) + self.translation
    }

    /// The unique fixed point `translation / (1 - ratio)`.
    pub fn fixed_point(&self) -> Point {
        self.translation.scale(1.0 / (1.0 - self.ratio))
    }
}

/// Exact-rational shadow of a similitude.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSimilitude {
    pub ratio: Rat,
    pub translation: (Rat, Rat),
}

impl RationalSimilitude {
    fn to_float(&self) -> Result<Similitude> {
        Similitude::new(
            rat_to_f64(&self.ratio),
            Point::new(rat_to_f64(&self.translation.0), rat_to_f64(&self.translation.1)),
        )
    }
}

/// A generating family of at least two similitudes together with its
/// similarity dimension `s`, the unique solution of `sum ratio_j^s = 1`.
#[derive(Debug, Clone)]
pub struct Ifs {
    maps: Vec<Similitude>,
    dimension: f64,
    weights: Vec<f64>,
    exact: Option<Vec<RationalSimilitude>>,
}

impl Ifs {
    pub fn new(maps: Vec<Similitude>) -> Result<Self> {
        Ifs::build(maps, None)
    }

    /// Builds from exact rationals, keeping them as a shadow for the
    /// tolerance-free comparison paths.
    pub fn from_rational(maps: Vec<RationalSimilitude>) -> Result<Self> {
        let floats = maps
            .iter()
            .map(RationalSimilitude::to_float)
            .collect::<Result<Vec<_>>>()?;
        Ifs::build(floats, Some(maps))
    }

    fn build(maps: Vec<Similitude>, exact: Option<Vec<RationalSimilitude>>) -> Result<Self> {
        let ratios: Vec<f64> = maps.iter().map(Similitude::ratio).collect();
        let dimension = solve_moran(&ratios)?;
        let weights: Vec<f64> = ratios.iter().map(|r| r.powf(dimension)).collect();
        Ok(Ifs {
            maps,
            dimension,
            weights,
            exact,
        })
    }

    pub fn maps(&self) -> &[Similitude] {
        &self.maps
    }

    /// Alphabet size `q`.
    pub fn alphabet_len(&self) -> usize {
        self.maps.len()
    }

    /// Map for a 1-based letter.
    pub fn map(&self, letter: u8) -> Result<&Similitude> {
        self.maps
            .get(letter as usize - 1)
            .ok_or(Error::LetterOutOfRange {
                letter: letter as usize,
                alphabet: self.maps.len(),
            })
    }

    /// Similarity dimension `s`.
    pub fn dimension(&self) -> f64 {
        self.dimension
    }

    /// Natural-measure weights `ratio_j^s`; they sum to one.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn exact(&self) -> Option<&[RationalSimilitude]> {
        self.exact.as_deref()
    }

    /// `|sum ratio_j^s - 1|` for the cached dimension.
    pub fn moran_residual(&self) -> f64 {
        (self.weights.iter().sum::<f64>() - 1.0).abs()
    }
}

/// Solves `sum ratio^s = 1` for `s` by bisection. The left hand side is
/// strictly decreasing in `s`, so the root is unique; the bracket
/// `[0, 2 log q / log(1/rho_max)]` always contains it.
pub fn solve_moran(ratios: &[f64]) -> Result<f64> {
    if ratios.len() < 2 {
        return Err(Error::EmptyOrSingleton(ratios.len()));
    }
    for (index, &value) in ratios.iter().enumerate() {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::RatioOutOfRange { index, value });
        }
    }
    let q = ratios.len() as f64;
    let rho_max = ratios.iter().cloned().fold(0.0_f64, f64::max);
    let f = |s: f64| ratios.iter().map(|r| r.powf(s)).sum::<f64>() - 1.0;

    let mut lo = 0.0_f64;
    let mut hi = 2.0 * q.ln() / (1.0 / rho_max).ln();
    for _ in 0..MORAN_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < MORAN_TOL {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A finite word over the alphabet `{1, ..., q}`. Letters are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[u8], alphabet: usize) -> Result<Self> {
        for &l in letters {
            if l == 0 || l as usize > alphabet {
                return Err(Error::LetterOutOfRange {
                    letter: l as usize,
                    alphabet,
                });
            }
        }
        Ok(Word(letters.to_vec()))
    }

    /// The word `letter^n`.
    pub fn repeated(letter: u8, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn child(&self, letter: u8) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Parses `"132"` (single digits) or `"1.3.12"` (dot separated).
    /// The empty string is the empty word.
    pub fn parse(s: &str, alphabet: usize) -> Result<Word> {
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters: Vec<u8> = if s.contains('.') {
            s.split('.')
                .map(|part| {
                    part.parse::<u8>()
                        .map_err(|_| Error::Invalid(format!("bad word component {part:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Invalid(format!("bad word character {ch:?}")))
                })
                .collect::<Result<_>>()?
        };
        Word::from_letters(&letters, alphabet)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l <= 9) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

/// A composed map `x -> ratio * x + translation` indexed by its word.
/// The empty word is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Cylinder {
    word: Word,
    ratio: f64,
    translation: Point,
}

impl Cylinder {
    pub fn root() -> Self {
        Cylinder {
            word: Word::empty(),
            ratio: 1.0,
            translation: Point::ORIGIN,
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn translation(&self) -> Point {
        self.translation
    }

    /// Extends the word by one letter: the composed ratio picks up the
    /// letter's ratio, the translation moves by the parent image of the
    /// letter's translation.
    pub fn child(&self, letter: u8, ifs: &Ifs) -> Result<Cylinder> {
        let map = ifs.map(letter)?;
        Ok(self.child_of(letter, map))
    }

    fn child_of(&self, letter: u8, map: &Similitude) -> Cylinder {
        Cylinder {
            word: self.word.child(letter),
            ratio: self.ratio * map.ratio(),
            translation: self.translation + map.translation().scale(self.ratio),
        }
    }

    /// Builds the cylinder of a whole word.
    pub fn from_word(word: &Word, ifs: &Ifs) -> Result<Cylinder> {
        let mut cyl = Cylinder::root();
        for &letter in word.letters() {
            cyl = cyl.child(letter, ifs)?;
        }
        Ok(cyl)
    }

    pub fn apply(&self, p: Point) -> Point {
        p.scale(self.ratio) + self.translation
    }

    /// Image of a rectangle under the composed map; with `attractor_bbox`
    /// as input this is the bounding box of the cylinder set.
    pub fn bbox(&self, rect: &Rect) -> Rect {
        Rect::new(
            self.ratio * rect.x0 + self.translation.x,
            self.ratio * rect.x1 + self.translation.x,
            self.ratio * rect.y0 + self.translation.y,
            self.ratio * rect.y1 + self.translation.y,
        )
    }
}

/// Bounding box of the attractor. Each coordinate map is increasing, so
/// the coordinate extremes of the attractor are the extreme fixed points
/// `w / (1 - ratio)` of the generating maps, and they are attained.
pub fn attractor_bbox(ifs: &Ifs) -> Rect {
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for m in ifs.maps() {
        let fp = m.fixed_point();
        xmin = xmin.min(fp.x);
        xmax = xmax.max(fp.x);
        ymin = ymin.min(fp.y);
        ymax = ymax.max(fp.y);
    }
    Rect::new(xmin, xmax, ymin, ymax)
}

/// Depth-first walk over the cylinder tree in lexicographic letter order.
///
/// A node is visited only when `explore` accepts it; internal nodes
/// (ratio still above `r`) are expanded, and stopping nodes (first ratio
/// at or below `r`, so the parent ratio exceeds `r`) go to `emit`.
/// Emitting more than `budget` cylinders aborts with a budget error.
/// Returns the number of cylinders emitted.
pub fn walk_stopping<E, F>(
    ifs: &Ifs,
    r: f64,
    budget: usize,
    mut explore: E,
    mut emit: F,
) -> Result<usize>
where
    E: FnMut(&Cylinder) -> bool,
    F: FnMut(Cylinder),
{
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidResolution(r));
    }
    let mut emitted = 0usize;
    let mut stack = vec![Cylinder::root()];
    while let Some(cyl) = stack.pop() {
        if !explore(&cyl) {
            continue;
        }
        if cyl.ratio() <= r {
            emitted += 1;
            if emitted > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            emit(cyl);
            continue;
        }
        for idx in (0..ifs.alphabet_len()).rev() {
            stack.push(cyl.child_of(idx as u8 + 1, &ifs.maps()[idx]));
        }
    }
    Ok(emitted)
}

/// The stopping partition: all words whose cylinder ratio is at most `r`
/// while the parent ratio still exceeds `r`. Prefix-free and exhaustive;
/// returned in lexicographic word order.
pub fn stopping_partition(ifs: &Ifs, r: f64, budget: usize) -> Result<Vec<Cylinder>> {
    let mut out = Vec::new();
    walk_stopping(ifs, r, budget, |_| true, |c| out.push(c))?;
    Ok(out)
}

/// Outcome of separation certification.
#[derive(Debug, Clone, PartialEq)]
pub enum Separation {
    /// Pairwise distance between first-generation pieces is at least
    /// `gap`, certified from cylinder-box covers refined to `depth`.
    Separated { gap: f64, depth: u32 },
    /// Covers still touch at the deepest refinement tried. This does not
    /// prove overlap; `witness` is a closest pair of letters (1-based).
    NotSeparated { depth: u32, witness: (usize, usize) },
}

impl Separation {
    pub fn is_separated(&self) -> bool {
        matches!(self, Separation::Separated { .. })
    }

    pub fn gap(&self) -> Option<f64> {
        match self {
            Separation::Separated { gap, .. } => Some(*gap),
            Separation::NotSeparated { .. } => None,
        }
    }
}

/// Certifies the strong separation condition from bounding-box covers.
///
/// For letters `i < j` the distance between their depth-n box covers is
/// a lower bound for the distance of the actual pieces, and it grows as
/// the covers refine. A pair is resolved at the first depth where its
/// cover distance turns positive; the certified gap is the minimum over
/// resolved pairs. Box covers only, no point-cloud heuristics, so the
/// returned gap is a true lower bound.
pub fn check_strong_separation(ifs: &Ifs, max_depth: u32) -> Result<Separation> {
    if max_depth < 1 {
        return Err(Error::Invalid("max_depth must be at least 1".into()));
    }
    let bbox = attractor_bbox(ifs);
    let q = ifs.alphabet_len();

    // covers[i]: cylinders refining piece i at the current depth
    let mut covers: Vec<Vec<Cylinder>> = (0..q)
        .map(|idx| vec![Cylinder::root().child_of(idx as u8 + 1, &ifs.maps()[idx])])
        .collect();
    let mut pending: Vec<(usize, usize)> = (0..q)
        .flat_map(|i| (i + 1..q).map(move |j| (i, j)))
        .collect();
    let mut gap = f64::INFINITY;
    let mut depth = 1;

    loop {
        let boxes: Vec<Vec<Rect>> = covers
            .iter()
            .map(|cyls| cyls.iter().map(|c| c.bbox(&bbox)).collect())
            .collect();
        pending.retain(|&(i, j)| {
            let d = cover_distance(&boxes[i], &boxes[j]);
            if d > 0.0 {
                gap = gap.min(d);
                false
            } else {
                true
            }
        });
        if pending.is_empty() {
            return Ok(Separation::Separated { gap, depth });
        }
        let active: Vec<bool> = {
            let mut a = vec![false; q];
            for &(i, j) in &pending {
                a[i] = true;
                a[j] = true;
            }
            a
        };
        let next_total: usize = covers
            .iter()
            .enumerate()
            .map(|(i, c)| if active[i] { c.len() * q } else { 0 })
            .sum();
        if depth >= max_depth || next_total > SEPARATION_BOX_CAP {
            let witness = pending[0];
            return Ok(Separation::NotSeparated {
                depth,
                witness: (witness.0 + 1, witness.1 + 1),
            });
        }
        for (i, cover) in covers.iter_mut().enumerate() {
            if !active[i] {
                continue;
            }
            let mut refined = Vec::with_capacity(cover.len() * q);
            for cyl in cover.iter() {
                for idx in 0..q {
                    refined.push(cyl.child_of(idx as u8 + 1, &ifs.maps()[idx]));
                }
            }
            *cover = refined;
        }
        depth += 1;
    }
}

fn cover_distance(a: &[Rect], b: &[Rect]) -> f64 {
    let mut min = f64::INFINITY;
    for ra in a {
        for rb in b {
            let d = ra.distance_to(rb);
            if d == 0.0 {
                return 0.0;
            }
            min = min.min(d);
        }
    }
    min
}

/// Chaos-game sample of the natural self-similar measure: maps are drawn
/// with probabilities `ratio_j^s`, the first 64 steps are discarded, and
/// the trajectory starts at the fixed point of map 1. Deterministic for a
/// fixed seed.
pub fn sample_natural_measure(ifs: &Ifs, n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cumulative = Vec::with_capacity(ifs.alphabet_len());
    let mut acc = 0.0;
    for w in ifs.weights() {
        acc += w;
        cumulative.push(acc);
    }
    let mut p = ifs.maps()[0].fixed_point();
    let mut out = Vec::with_capacity(n);
    for step in 0..(n + CHAOS_BURN_IN) {
        let u: f64 = rng.gen();
        let j = cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(ifs.alphabet_len() - 1);
        p = ifs.maps()[j].apply(p);
        if step >= CHAOS_BURN_IN {
            out.push(p);
        }
    }
    out
}

/// Exact composed line data of a word in a rational shadow along an
/// exact direction vector: `(ratio, offset)` of the projected word map.
pub fn exact_line_compose(
    maps: &[RationalSimilitude],
    dir: &(Rat, Rat),
    word: &Word,
) -> (Rat, Rat) {
    let mut ratio: Rat = num_traits::One::one();
    let mut offset: Rat = Rat::zero();
    for &letter in word.letters() {
        let m = &maps[letter as usize - 1];
        let c = &m.translation.0 * &dir.0 + &m.translation.1 * &dir.1;
        offset = offset + &ratio * c;
        ratio = ratio * &m.ratio;
    }
    (ratio, offset)
}
