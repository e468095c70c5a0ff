//! Bi-infinite symbolic dynamics: the 2-shift, subshifts of finite type,
//! and decidable proximality of eventually periodic sequences.
//!
//! Points are restricted to eventually periodic sequences (periodic left
//! tail, finite center, periodic right tail). This class is dense in the
//! full shift, closed under the shift map, and large enough to make
//! proximality and asymptoticity decidable: along forward time two such
//! sequences come together on ever larger windows iff the periodic
//! extensions of their right tails agree, which one lcm-length window
//! decides.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolicError {
    #[error("alphabet sizes differ: {0} vs {1}")]
    AlphabetMismatch(u8, u8),
    #[error("symbol {0} is outside the alphabet of size {1}")]
    SymbolOutOfRange(u8, u8),
    #[error("period words must be nonempty")]
    EmptyPeriod,
    #[error("alphabet must have at least two symbols")]
    AlphabetTooSmall,
    #[error("adjacency matrix must be square and 0/1")]
    BadAdjacency,
    #[error("adjacency matrix has an empty row or column")]
    StrandedSymbol,
    #[error("cylinder word is empty or not admissible")]
    InadmissibleCylinder,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Eventually periodic bi-infinite symbol sequence.
///
/// Layout: copies of `left_period` fill all indices below `center_start`
/// (aligned so one copy ends right at the boundary), the explicit
/// `center` occupies `center_start..center_start + center.len()`, and
/// copies of `right_period` fill everything above. Canonical form keeps
/// both periods primitive and the center not absorbable into either
/// tail; equality is nevertheless semantic, because a purely periodic
/// sequence has many layouts.
#[derive(Debug, Clone, Eq)]
pub struct BiSeq {
    alphabet_size: u8,
    left_period: Vec<u8>,
    center: Vec<u8>,
    right_period: Vec<u8>,
    center_start: i64,
}

/// Shortest word whose repetition gives `w`.
fn primitive_root(w: &[u8]) -> Vec<u8> {
    let n = w.len();
    for p in 1..=n {
        if n % p == 0 && w.chunks(p).all(|c| c == &w[..p]) {
            return w[..p].to_vec();
        }
    }
    unreachable!()
}

impl BiSeq {
    pub fn new(
        alphabet_size: u8,
        left_period: Vec<u8>,
        center: Vec<u8>,
        right_period: Vec<u8>,
        center_start: i64,
    ) -> Result<Self, SymbolicError> {
        if alphabet_size < 2 {
            return Err(SymbolicError::AlphabetTooSmall);
        }
        if left_period.is_empty() || right_period.is_empty() {
            return Err(SymbolicError::EmptyPeriod);
        }
        for &s in left_period.iter().chain(&center).chain(&right_period) {
            if s >= alphabet_size {
                return Err(SymbolicError::SymbolOutOfRange(s, alphabet_size));
            }
        }
        let mut seq = BiSeq {
            alphabet_size,
            left_period: primitive_root(&left_period),
            center,
            right_period: primitive_root(&right_period),
            center_start,
        };
        seq.absorb_center();
        Ok(seq)
    }

    /// The constant sequence on one symbol.
    pub fn constant(symbol: u8, alphabet_size: u8) -> Self {
        BiSeq::new(alphabet_size, vec![symbol], vec![], vec![symbol], 0).unwrap()
    }

    /// Purely periodic sequence repeating `word`, with `word[0]` at
    /// index 0.
    pub fn periodic(word: &[u8], alphabet_size: u8) -> Result<Self, SymbolicError> {
        BiSeq::new(alphabet_size, word.to_vec(), vec![], word.to_vec(), 0)
    }

    fn absorb_center(&mut self) {
        loop {
            if let Some(&last) = self.center.last() {
                let r = self.right_period.len();
                if last == self.right_period[r - 1] {
                    self.center.pop();
                    self.right_period.rotate_right(1);
                    continue;
                }
            }
            if let Some(&first) = self.center.first() {
                if first == self.left_period[0] {
                    self.center.remove(0);
                    self.left_period.rotate_left(1);
                    self.center_start += 1;
                    continue;
                }
            }
            break;
        }
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn left_period(&self) -> &[u8] {
        &self.left_period
    }

    pub fn right_period(&self) -> &[u8] {
        &self.right_period
    }

    pub fn center(&self) -> &[u8] {
        &self.center
    }

    fn center_end(&self) -> i64 {
        self.center_start + self.center.len() as i64
    }

    /// Coordinate access, total over all of Z.
    pub fn get(&self, i: i64) -> u8 {
        if i < self.center_start {
            let l = self.left_period.len() as i64;
            let off = (self.center_start - 1 - i).rem_euclid(l);
            self.left_period[(l - 1 - off) as usize]
        } else if i < self.center_end() {
            self.center[(i - self.center_start) as usize]
        } else {
            let r = self.right_period.len() as i64;
            self.right_period[((i - self.center_end()).rem_euclid(r)) as usize]
        }
    }

    pub fn window(&self, lo: i64, hi: i64) -> Vec<u8> {
        (lo..hi).map(|i| self.get(i)).collect()
    }

    /// Index from which the right tail is purely periodic.
    pub fn right_tail_start(&self) -> i64 {
        self.center_end()
    }

    /// Index below which the left tail is purely periodic.
    pub fn left_tail_end(&self) -> i64 {
        self.center_start
    }
}

/// Coordinates satisfy `shift(s, n)(i) = s(i + n)`.
pub fn shift(s: &BiSeq, n: i64) -> BiSeq {
    let mut out = s.clone();
    out.center_start -= n;
    out
}

impl PartialEq for BiSeq {
    /// Semantic equality of the sequences: agreement on a window wide
    /// enough to cover both centers plus one lcm of each pair of tail
    /// periods pins every coordinate.
    fn eq(&self, other: &Self) -> bool {
        if self.alphabet_size != other.alphabet_size {
            return false;
        }
        let left_l = self.left_period.len().lcm(&other.left_period.len()) as i64;
        let right_l = self.right_period.len().lcm(&other.right_period.len()) as i64;
        let lo = self.center_start.min(other.center_start) - left_l;
        let hi = self.center_end().max(other.center_end()) + right_l;
        (lo..hi).all(|i| self.get(i) == other.get(i))
    }
}

impl fmt::Display for BiSeq {
    /// Text form `(L)* w . w' (R)*` with `.` marking index 0; the
    /// explicit window covers the center and stretches to the origin
    /// when the origin falls inside a tail.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.center_start.min(0);
        let hi = self.center_end().max(0);
        // Rotate both period words into phase at the printed boundaries:
        // a copy of the left word ends at `lo`, the right word starts at
        // `hi`. Without this the explicit window would change the phase.
        let l = self.left_period.len() as i64;
        let left: Vec<u8> = (0..l).map(|k| self.get(lo - l + k)).collect();
        let r = self.right_period.len() as i64;
        let right: Vec<u8> = (0..r).map(|k| self.get(hi + k)).collect();
        write!(f, "({})*", word_string(&left))?;
        for i in lo..hi {
            if i == 0 {
                write!(f, " .")?;
            }
            write!(f, " {}", symbol_char(self.get(i)))?;
        }
        if hi <= 0 {
            write!(f, " .")?;
        }
        write!(f, " ({})*", word_string(&right))
    }
}

fn symbol_char(s: u8) -> char {
    (b'0' + s) as char
}

fn word_string(w: &[u8]) -> String {
    w.iter().map(|&s| symbol_char(s)).collect()
}

pub fn parse_word(s: &str) -> Result<Vec<u8>, SymbolicError> {
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| SymbolicError::Parse(format!("bad symbol `{c}`")))
        })
        .collect()
}

impl FromStr for BiSeq {
    type Err = SymbolicError;

    /// Parses the display form, e.g. `(0)* 1 . 0 (10)*`. The alphabet
    /// size is the smallest that fits the symbols (at least 2).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(SymbolicError::Parse("expected `(L)* ... . ... (R)*`".into()));
        }
        let star_word = |t: &str| -> Result<Vec<u8>, SymbolicError> {
            let inner = t
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(")*"))
                .ok_or_else(|| SymbolicError::Parse(format!("expected `(word)*`, got `{t}`")))?;
            parse_word(inner)
        };
        let left = star_word(toks[0])?;
        let right = star_word(toks[toks.len() - 1])?;
        let mut pre = Vec::new();
        let mut post = Vec::new();
        let mut seen_dot = false;
        for t in &toks[1..toks.len() - 1] {
            if *t == "." {
                if seen_dot {
                    return Err(SymbolicError::Parse("duplicate origin marker".into()));
                }
                seen_dot = true;
            } else {
                let w = parse_word(t)?;
                if seen_dot {
                    post.extend(w);
                } else {
                    pre.extend(w);
                }
            }
        }
        if !seen_dot {
            return Err(SymbolicError::Parse("missing origin marker `.`".into()));
        }
        let center_start = -(pre.len() as i64);
        let mut center = pre;
        center.extend(post);
        let max_sym = left
            .iter()
            .chain(&right)
            .chain(&center)
            .copied()
            .max()
            .unwrap_or(0);
        BiSeq::new(max_sym.max(1) + 1, left, center, right, center_start)
    }
}

// --- subshifts of finite type ------------------------------------------------

/// Subshift of finite type given by a 0/1 adjacency matrix; entry (i, j)
/// permits symbol j to follow symbol i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sft {
    adjacency: Vec<Vec<u8>>,
}

impl Sft {
    pub fn new(adjacency: Vec<Vec<u8>>) -> Result<Self, SymbolicError> {
        let n = adjacency.len();
        if n == 0 || adjacency.iter().any(|r| r.len() != n) {
            return Err(SymbolicError::BadAdjacency);
        }
        if adjacency.iter().flatten().any(|&e| e > 1) {
            return Err(SymbolicError::BadAdjacency);
        }
        for i in 0..n {
            if adjacency[i].iter().all(|&e| e == 0) || (0..n).all(|j| adjacency[j][i] == 0) {
                return Err(SymbolicError::StrandedSymbol);
            }
        }
        Ok(Sft { adjacency })
    }

    /// Full shift on `k` symbols: every transition allowed.
    pub fn full_shift(k: u8) -> Self {
        Sft {
            adjacency: vec![vec![1; k as usize]; k as usize],
        }
    }

    pub fn alphabet_size(&self) -> u8 {
        self.adjacency.len() as u8
    }

    pub fn allows(&self, from: u8, to: u8) -> bool {
        self.adjacency[from as usize][to as usize] == 1
    }

    pub fn adjacency(&self) -> &[Vec<u8>] {
        &self.adjacency
    }

    pub fn word_admissible(&self, w: &[u8]) -> bool {
        w.iter().all(|&s| s < self.alphabet_size())
            && w.windows(2).all(|p| self.allows(p[0], p[1]))
    }

    /// Plain text form: one whitespace-separated 0/1 row per line.
    pub fn to_text(&self) -> String {
        self.adjacency
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }

    pub fn from_text(text: &str) -> Result<Self, SymbolicError> {
        let rows: Vec<Vec<u8>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| match t {
                        "0" => Ok(0u8),
                        "1" => Ok(1u8),
                        _ => Err(SymbolicError::Parse(format!("bad matrix entry `{t}`"))),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Sft::new(rows)
    }
}

/// The 5-symbol transition matrix of the cat map's Markov partition:
/// rows 1-3 are (1,0,1,1,0) and rows 4-5 are (0,1,0,0,1).
pub fn adler_weiss_matrix() -> Sft {
    Sft::new(vec![
        vec![1, 0, 1, 1, 0],
        vec![1, 0, 1, 1, 0],
        vec![1, 0, 1, 1, 0],
        vec![0, 1, 0, 0, 1],
        vec![0, 1, 0, 0, 1],
    ])
    .unwrap()
}

/// Membership of an eventually periodic sequence in an SFT: checking one
/// period of each tail, the center, and both junction windows covers
/// every adjacent pair that occurs.
pub fn seq_in_sft(s: &BiSeq, x: &Sft) -> Result<bool, SymbolicError> {
    if s.alphabet_size() != x.alphabet_size() {
        return Err(SymbolicError::AlphabetMismatch(
            s.alphabet_size(),
            x.alphabet_size(),
        ));
    }
    let lo = s.left_tail_end() - s.left_period().len() as i64 - 1;
    let hi = s.right_tail_start() + s.right_period().len() as i64 + 1;
    Ok((lo..hi).all(|i| x.allows(s.get(i), s.get(i + 1))))
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    out[i][j] |= b[k][j];
                }
            }
        }
    }
    out
}

fn bool_adjacency(x: &Sft) -> Vec<Vec<bool>> {
    x.adjacency()
        .iter()
        .map(|r| r.iter().map(|&e| e == 1).collect())
        .collect()
}

/// Least k <= k_max with A^k entrywise positive, if any.
pub fn sft_primitivity(x: &Sft, k_max: u32) -> Option<u32> {
    assert!(k_max >= 1);
    let base = bool_adjacency(x);
    let mut power = base.clone();
    for k in 1..=k_max {
        if power.iter().flatten().all(|&e| e) {
            return Some(k);
        }
        if k < k_max {
            power = bool_mul(&power, &base);
        }
    }
    None
}

/// Number of points of period dividing n: trace(A^n).
pub fn sft_periodic_count(x: &Sft, n: u32) -> BigInt {
    assert!(n >= 1);
    let k = x.alphabet_size() as usize;
    let to_big = |m: &[Vec<u8>]| -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    };
    let mul = |a: &[Vec<BigInt>], b: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); k]; k];
        for i in 0..k {
            for l in 0..k {
                if !a[i][l].is_zero() {
                    for j in 0..k {
                        out[i][j] += &a[i][l] * &b[l][j];
                    }
                }
            }
        }
        out
    };
    let base = to_big(x.adjacency());
    let mut acc: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut sq = base;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = mul(&sq, &sq);
        }
    }
    (0..k).map(|i| acc[i][i].clone()).sum()
}

/// Certificate for a positive proximality verdict: from `aligned_from`
/// on, both right tails follow the same periodic pattern, which the
/// window of length `window_len` (the lcm of the tail periods) verifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentCertificate {
    pub aligned_from: i64,
    pub window_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqProximality {
    pub proximal: bool,
    pub certificate: Option<AlignmentCertificate>,
}

fn right_extensions_agree(x: &BiSeq, y: &BiSeq) -> Option<AlignmentCertificate> {
    let from = x.right_tail_start().max(y.right_tail_start());
    let len = x.right_period().len().lcm(&y.right_period().len());
    if (from..from + len as i64).all(|i| x.get(i) == y.get(i)) {
        Some(AlignmentCertificate {
            aligned_from: from,
            window_len: len,
        })
    } else {
        None
    }
}

/// Decides proximality along forward shifts: there are times n -> inf at
/// which the two sequences agree on windows of radius -> inf around the
/// origin iff the periodic extensions of their right tails coincide in
/// the alignment both sequences share.
pub fn seq_proximal(x: &BiSeq, y: &BiSeq) -> Result<SeqProximality, SymbolicError> {
    if x.alphabet_size() != y.alphabet_size() {
        return Err(SymbolicError::AlphabetMismatch(
            x.alphabet_size(),
            y.alphabet_size(),
        ));
    }
    let certificate = right_extensions_agree(x, y);
    Ok(SeqProximality {
        proximal: certificate.is_some(),
        certificate,
    })
}

/// Forward asymptoticity: agreement of all coordinates from some index
/// on, decidable by the same right-tail comparison.
pub fn seq_asymptotic(x: &BiSeq, y: &BiSeq) -> Result<bool, SymbolicError> {
    if x.alphabet_size() != y.alphabet_size() {
        return Err(SymbolicError::AlphabetMismatch(
            x.alphabet_size(),
            y.alphabet_size(),
        ));
    }
    Ok(right_extensions_agree(x, y).is_some())
}

/// Cylinder set: all sequences carrying `word` starting at `start_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub word: Vec<u8>,
    pub start_index: i64,
}

impl Cylinder {
    pub fn new(word: Vec<u8>, start_index: i64) -> Self {
        Cylinder { word, start_index }
    }
}

/// Decides sigma^n(U) cap V != empty for 1 <= n <= n_max and returns the
/// least N >= 1 from which every n hits, if the top end hits at all.
///
/// Shifting U by n moves its word to start_index - n. When the two
/// placed words overlap they must agree symbol by symbol; when they are
/// apart, an admissible connecting word of the right length must exist,
/// which positivity of the corresponding adjacency power decides.
pub fn mixing_gap(
    x: &Sft,
    u: &Cylinder,
    v: &Cylinder,
    n_max: u32,
) -> Result<Option<u32>, SymbolicError> {
    if u.word.is_empty() || !x.word_admissible(&u.word) {
        return Err(SymbolicError::InadmissibleCylinder);
    }
    if v.word.is_empty() || !x.word_admissible(&v.word) {
        return Err(SymbolicError::InadmissibleCylinder);
    }
    let base = bool_adjacency(x);
    let mut powers = vec![base.clone()]; // powers[i] = A^(i+1)
    let mut last_miss = 0u32;
    for n in 1..=n_max {
        let hit = placed_words_compatible(
            x,
            &mut powers,
            &base,
            (u.start_index - n as i64, &u.word),
            (v.start_index, &v.word),
        );
        if !hit {
            last_miss = n;
        }
    }
    if last_miss == n_max {
        Ok(None)
    } else {
        Ok(Some(last_miss + 1))
    }
}

fn placed_words_compatible(
    x: &Sft,
    powers: &mut Vec<Vec<Vec<bool>>>,
    base: &[Vec<bool>],
    a: (i64, &[u8]),
    b: (i64, &[u8]),
) -> bool {
    let (first, second) = if a.0 <= b.0 { (a, b) } else { (b, a) };
    let (fs, fw) = first;
    let (ss, sw) = second;
    let f_end = fs + fw.len() as i64;
    if ss < f_end {
        // overlap: symbols must agree; admissibility inside each word is
        // given, and every adjacent pair of the merged word lies inside
        // one of the two words
        let overlap_end = f_end.min(ss + sw.len() as i64);
        for i in ss..overlap_end {
            if fw[(i - fs) as usize] != sw[(i - ss) as usize] {
                return false;
            }
        }
        true
    } else {
        // gap g >= 0: need a path of g+1 transitions from the last
        // symbol of the first word to the first symbol of the second
        let g = (ss - f_end) as usize;
        while powers.len() < g + 1 {
            let next = bool_mul(powers.last().unwrap(), base);
            powers.push(next);
        }
        powers[g][fw[fw.len() - 1] as usize][sw[0] as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> BiSeq {
        s.parse().unwrap()
    }

    #[test]
    fn coordinate_layout() {
        // ... 0 0 [1] 0 1 1 0 1 1 ... with center "1" at index 0
        let s = BiSeq::new(2, vec![0], vec![1], vec![0, 1, 1], 0).unwrap();
        assert_eq!(s.get(-2), 0);
        assert_eq!(s.get(-1), 0);
        assert_eq!(s.get(0), 1);
        assert_eq!(s.get(1), 0);
        assert_eq!(s.get(2), 1);
        assert_eq!(s.get(3), 1);
        assert_eq!(s.get(4), 0);
        assert_eq!(s.window(-2, 5), vec![0, 0, 1, 0, 1, 1, 0]);
    }

    #[test]
    fn left_tail_alignment_ends_at_boundary() {
        let s = BiSeq::new(2, vec![0, 1], vec![], vec![1, 1, 0], 0).unwrap();
        // copy of "01" ends at index -1: s(-2) = 0, s(-1) = 1
        assert_eq!(s.get(-1), 1);
        assert_eq!(s.get(-2), 0);
        assert_eq!(s.get(-3), 1);
        assert_eq!(s.get(-4), 0);
    }

    #[test]
    fn canonical_form_is_primitive_and_absorbed() {
        let s = BiSeq::new(2, vec![0, 1, 0, 1], vec![1, 1, 0], vec![1, 0, 1, 0], -1).unwrap();
        // periods reduce to their primitive roots, and the center's
        // trailing "1 0" is absorbed into the right tail
        assert_eq!(s.left_period(), &[0, 1]);
        assert_eq!(s.right_period(), &[1, 0]);
        assert_eq!(s.center(), &[1]);
        // an unreduced layout of the same sequence compares equal
        let t = BiSeq::new(2, vec![0, 1], vec![1, 1, 0], vec![1, 0, 1, 0], -1).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn equality_is_semantic() {
        let a = BiSeq::constant(0, 2);
        let b = BiSeq::new(2, vec![0], vec![0, 0], vec![0], 17).unwrap();
        assert_eq!(a, b);
        let alt1 = BiSeq::periodic(&[0, 1], 2).unwrap();
        let alt2 = BiSeq::new(2, vec![1, 0], vec![], vec![1, 0], 1).unwrap();
        assert_eq!(alt1, alt2);
        let alt3 = shift(&alt1, 1);
        assert_ne!(alt1, alt3);
        assert_eq!(shift(&alt3, 1), alt1);
    }

    #[test]
    fn shift_moves_coordinates() {
        let s = seq("(0)* 1 . 0 (10)*");
        let t = shift(&s, 3);
        for i in -6..8 {
            assert_eq!(t.get(i), s.get(i + 3));
        }
        assert_eq!(shift(&BiSeq::constant(0, 2), 5), BiSeq::constant(0, 2));
        let u = shift(&shift(&s, 4), -7);
        assert_eq!(u, shift(&s, -3));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for text in [
            "(0)* 1 . 0 (10)*",
            "(0)* . (1)*",
            "(01)* . (10)*",
            "(10110)* 0 0 . 1 (11010)*",
        ] {
            let s = seq(text);
            let back: BiSeq = s.to_string().parse().unwrap();
            assert_eq!(s, back, "round trip failed for `{text}`");
        }
        assert!("(0)* (1)*".parse::<BiSeq>().is_err());
        assert!("(0)* . . (1)*".parse::<BiSeq>().is_err());
        assert!("0 . 1".parse::<BiSeq>().is_err());
    }

    #[test]
    fn origin_inside_tail_still_prints() {
        let s = shift(&seq("(0)* 1 . (0)*"), -4); // center far right of origin
        let back: BiSeq = s.to_string().parse().unwrap();
        assert_eq!(s, back);
        let t = shift(&seq("(0)* 1 . (0)*"), 4); // center left of origin
        let back: BiSeq = t.to_string().parse().unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn adler_weiss_shape() {
        let m = adler_weiss_matrix();
        assert!(m.allows(0, 0));
        assert!(!m.allows(3, 0));
        let row_sums: Vec<u8> = m.adjacency().iter().map(|r| r.iter().sum()).collect();
        assert_eq!(row_sums, vec![3, 3, 3, 2, 2]);
        let trace: u8 = (0..5).map(|i| m.adjacency()[i][i]).sum();
        assert_eq!(trace, 3);
    }

    #[test]
    fn sft_membership() {
        let full = Sft::full_shift(2);
        assert!(seq_in_sft(&BiSeq::constant(0, 2), &full).unwrap());
        let no11 = Sft::new(vec![vec![1, 1], vec![1, 0]]).unwrap();
        assert!(!seq_in_sft(&BiSeq::constant(1, 2), &no11).unwrap());
        assert!(seq_in_sft(&BiSeq::periodic(&[0, 1], 2).unwrap(), &no11).unwrap());
        // 5-cycle 1 -> 3 -> 4 -> 2 -> 1 -> 1 in the Markov matrix
        // (1-based symbols; 0-based word below)
        let cyc = BiSeq::periodic(&[0, 2, 3, 1, 0], 5).unwrap();
        assert!(seq_in_sft(&cyc, &adler_weiss_matrix()).unwrap());
        assert!(matches!(
            seq_in_sft(&BiSeq::constant(0, 2), &adler_weiss_matrix()),
            Err(SymbolicError::AlphabetMismatch(2, 5))
        ));
    }

    /// 5x5 integer squaring, independent of the boolean path used by
    /// sft_primitivity.
    #[test]
    fn adler_weiss_is_primitive_with_exponent_two() {
        let m = adler_weiss_matrix();
        let adj = m.adjacency();
        let mut square = [[0u32; 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    square[i][j] += adj[i][k] as u32 * adj[k][j] as u32;
                }
            }
        }
        assert!(square.iter().flatten().all(|&e| e > 0));
        assert!(adj.iter().flatten().any(|&e| e == 0));
        assert_eq!(sft_primitivity(&m, 10), Some(2));
        assert_eq!(sft_primitivity(&Sft::full_shift(2), 10), Some(1));
        let perm = Sft::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(sft_primitivity(&perm, 12), None);
    }

    /// Brute-force count of admissible cyclic words of length n.
    fn periodic_count_by_enumeration(x: &Sft, n: u32) -> u64 {
        let k = x.alphabet_size() as u64;
        let mut count = 0;
        for mut code in 0..k.pow(n) {
            let mut word = Vec::with_capacity(n as usize);
            for _ in 0..n {
                word.push((code % k) as u8);
                code /= k;
            }
            let ok = (0..n as usize).all(|i| x.allows(word[i], word[(i + 1) % n as usize]));
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn periodic_counts_match_enumeration() {
        let full = Sft::full_shift(2);
        assert_eq!(sft_periodic_count(&full, 3), BigInt::from(8));
        let aw = adler_weiss_matrix();
        assert_eq!(sft_periodic_count(&aw, 1), BigInt::from(3));
        assert_eq!(
            sft_periodic_count(&aw, 2),
            BigInt::from(periodic_count_by_enumeration(&aw, 2))
        );
        for n in 1..=6 {
            assert_eq!(
                sft_periodic_count(&aw, n),
                BigInt::from(periodic_count_by_enumeration(&aw, n)),
                "n={n}"
            );
        }
    }

    #[test]
    fn proximality_examples() {
        let zeros = BiSeq::constant(0, 2);
        let ones = BiSeq::constant(1, 2);
        assert!(seq_proximal(&zeros, &zeros).unwrap().proximal);
        let bump = seq("(0)* 1 . (0)*");
        let v = seq_proximal(&zeros, &bump).unwrap();
        assert!(v.proximal);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.window_len, 1);
        assert!(!seq_proximal(&zeros, &ones).unwrap().proximal);
    }

    #[test]
    fn offset_periodic_orbit_is_not_proximal_to_itself() {
        let a = BiSeq::periodic(&[0, 1], 2).unwrap();
        let b = shift(&a, 1); // same orbit, offset alignment
        assert!(!seq_proximal(&a, &b).unwrap().proximal);
        assert!(!seq_asymptotic(&a, &b).unwrap());
    }

    #[test]
    fn asymptotic_examples() {
        let zeros = BiSeq::constant(0, 2);
        let mut with_defect = BiSeq::new(2, vec![0], vec![1], vec![0], -3).unwrap();
        assert!(seq_asymptotic(&zeros, &with_defect).unwrap());
        with_defect = BiSeq::constant(1, 2);
        assert!(!seq_asymptotic(&zeros, &with_defect).unwrap());
    }

    #[test]
    fn proximality_is_symmetric_and_shift_invariant() {
        let pairs = [
            (seq("(0)* 1 . 0 (10)*"), seq("(1)* . (10)*")),
            (seq("(0)* . (1)*"), seq("(01)* . (1)*")),
            (seq("(01)* . (01)*"), seq("(10)* . (10)*")),
        ];
        for (x, y) in &pairs {
            let v = seq_proximal(x, y).unwrap().proximal;
            assert_eq!(v, seq_proximal(y, x).unwrap().proximal);
            for n in [-3i64, 1, 7] {
                assert_eq!(
                    v,
                    seq_proximal(&shift(x, n), &shift(y, n)).unwrap().proximal
                );
            }
        }
    }

    #[test]
    fn mixing_gap_on_the_full_shift() {
        let full = Sft::full_shift(2);
        let u = Cylinder::new(vec![0, 1, 0], 0);
        let v = Cylinder::new(vec![1, 1, 1], 0);
        let n = mixing_gap(&full, &u, &v, 20).unwrap().unwrap();
        assert!(n <= 3, "N = {n}");
        let single = Cylinder::new(vec![1], 0);
        assert_eq!(mixing_gap(&full, &single, &single, 20).unwrap(), Some(1));
    }

    #[test]
    fn mixing_gap_respects_the_primitivity_exponent() {
        let aw = adler_weiss_matrix();
        let u = Cylinder::new(vec![0, 2], 0);
        let v = Cylinder::new(vec![3, 1], 0);
        assert!(aw.word_admissible(&u.word) && aw.word_admissible(&v.word));
        let n = mixing_gap(&aw, &u, &v, 20).unwrap().unwrap();
        assert!(n <= 2 + 2, "N = {n}");
    }

    #[test]
    fn mixing_gap_none_for_periodic_sft() {
        let perm = Sft::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let u = Cylinder::new(vec![0], 0);
        // sigma^n(U) hits U only at even n, so odd n misses forever
        assert_eq!(mixing_gap(&perm, &u, &u, 21).unwrap(), None);
    }

    #[test]
    fn inadmissible_cylinder_is_an_error() {
        let no11 = Sft::new(vec![vec![1, 1], vec![1, 0]]).unwrap();
        let bad = Cylinder::new(vec![1, 1], 0);
        assert!(matches!(
            mixing_gap(&no11, &bad, &bad, 5),
            Err(SymbolicError::InadmissibleCylinder)
        ));
    }

    #[test]
    fn sft_text_round_trip() {
        let aw = adler_weiss_matrix();
        let back = Sft::from_text(&aw.to_text()).unwrap();
        assert_eq!(aw, back);
        assert!(Sft::from_text("1 0\n0").is_err());
        assert!(Sft::from_text("0 0\n1 1").is_err()); // stranded row
    }
}
