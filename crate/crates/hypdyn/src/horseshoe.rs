//! A concrete piecewise-affine horseshoe on the unit square, with exact
//! rational arithmetic: branch maps, itinerary coding, address
//! rectangles, and the conjugacy with the 2-shift.
//!
//! The map contracts the x-direction by `mu` and expands the y-direction
//! by `lambda`, sending the two horizontal strips H0, H1 affinely onto
//! the vertical strips V0, V1. Points of the invariant set are
//! represented by their codes; geometry enters through the nested
//! rectangles a finite code window pins down.

use crate::exactnum::{format_rational, parse_rational, rat, ExactError, Rational};
use crate::symbolic::{seq_proximal, BiSeq, SymbolicError};
use num_traits::{One, Signed, Zero};
use serde_json::json;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HorseshoeError {
    #[error("orbit escapes the strips at time {time} ({axis:?} test)")]
    Escape { time: i64, axis: StripAxis },
    #[error("point ({0}, {1}) is outside the unit square")]
    OutsideSquare(String, String),
    #[error("contraction must satisfy 0 < mu < 1/2, got {0}")]
    BadContraction(String),
    #[error("expansion must satisfy lambda > 2, got {0}")]
    BadExpansion(String),
    #[error("window must be nonempty on both sides of the marker")]
    EmptyWindow,
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripAxis {
    /// Membership test in the horizontal strips H0, H1 (forward step).
    Horizontal,
    /// Membership test in the vertical strips V0, V1 (backward step).
    Vertical,
}

/// Parameters of the affine horseshoe. The horizontal strips are forced
/// by the branch formulas: H0 = [0,1] x [0, 1/lambda] and
/// H1 = [0,1] x [1 - 1/lambda, 1], so that each branch covers the full
/// square in the y-direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorseshoeParams {
    contraction: Rational,
    expansion: Rational,
    strip_0: (Rational, Rational),
    strip_1: (Rational, Rational),
    /// The 1-branch folds (reverses orientation) by default; switching
    /// this off makes it a plain affine translation instead.
    fold: bool,
}

impl HorseshoeParams {
    pub fn new(contraction: Rational, expansion: Rational, fold: bool) -> Result<Self, HorseshoeError> {
        if contraction <= Rational::zero() || contraction >= rat(1, 2) {
            return Err(HorseshoeError::BadContraction(format_rational(&contraction)));
        }
        if expansion <= rat(2, 1) {
            return Err(HorseshoeError::BadExpansion(format_rational(&expansion)));
        }
        let inv = Rational::one() / &expansion;
        Ok(HorseshoeParams {
            strip_0: (Rational::zero(), inv.clone()),
            strip_1: (Rational::one() - inv, Rational::one()),
            contraction,
            expansion,
            fold,
        })
    }

    /// The ternary horseshoe: mu = 1/3, lambda = 3, folding 1-branch.
    /// Both invariant slices are then middle-thirds Cantor sets.
    pub fn standard() -> Self {
        HorseshoeParams::new(rat(1, 3), rat(3, 1), true).unwrap()
    }

    pub fn contraction(&self) -> &Rational {
        &self.contraction
    }

    pub fn expansion(&self) -> &Rational {
        &self.expansion
    }

    pub fn strip(&self, symbol: u8) -> &(Rational, Rational) {
        if symbol == 0 {
            &self.strip_0
        } else {
            &self.strip_1
        }
    }

    /// Strict key-value config: keys `mu`, `lambda`, `fold`; rationals
    /// as `p/q`. Unknown keys are rejected.
    pub fn from_config_text(text: &str) -> Result<Self, HorseshoeError> {
        let mut mu = rat(1, 3);
        let mut lambda = rat(3, 1);
        let mut fold = true;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| HorseshoeError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            match key.trim() {
                "mu" => mu = parse_rational(value)?,
                "lambda" => lambda = parse_rational(value)?,
                "fold" => {
                    fold = match value.trim() {
                        "true" => true,
                        "false" => false,
                        other => {
                            return Err(HorseshoeError::Config(format!("bad fold value `{other}`")))
                        }
                    }
                }
                other => return Err(HorseshoeError::Config(format!("unknown key `{other}`"))),
            }
        }
        HorseshoeParams::new(mu, lambda, fold)
    }

    fn h_strip(&self, p: &SquarePoint) -> Option<u8> {
        if p.y >= self.strip_0.0 && p.y <= self.strip_0.1 {
            Some(0)
        } else if p.y >= self.strip_1.0 && p.y <= self.strip_1.1 {
            Some(1)
        } else {
            None
        }
    }

    fn v_strip(&self, p: &SquarePoint) -> Option<u8> {
        if p.x <= self.contraction {
            Some(0)
        } else if p.x >= Rational::one() - &self.contraction {
            Some(1)
        } else {
            None
        }
    }
}

/// Point of the unit square with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarePoint {
    pub x: Rational,
    pub y: Rational,
}

impl SquarePoint {
    pub fn new(x: Rational, y: Rational) -> Result<Self, HorseshoeError> {
        if x < Rational::zero() || x > Rational::one() || y < Rational::zero() || y > Rational::one()
        {
            return Err(HorseshoeError::OutsideSquare(
                format_rational(&x),
                format_rational(&y),
            ));
        }
        Ok(SquarePoint { x, y })
    }

    pub fn from_ints(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        SquarePoint::new(rat(xn, xd), rat(yn, yd)).unwrap()
    }
}

impl fmt::Display for SquarePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl FromStr for SquarePoint {
    type Err = HorseshoeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| HorseshoeError::Config(format!("expected `(x, y)`, got `{s}`")))?;
        let (xs, ys) = inner
            .split_once(',')
            .ok_or_else(|| HorseshoeError::Config(format!("expected two coordinates in `{s}`")))?;
        SquarePoint::new(parse_rational(xs)?, parse_rational(ys)?)
    }
}

/// One forward step. The 0-branch is (x, y) -> (mu x, lambda y); the
/// 1-branch folds, (x, y) -> (1 - mu x, lambda (1 - y)), unless `fold`
/// is off, in which case it translates: (1 - mu + mu x, lambda y - lambda + 1).
pub fn hs_apply(params: &HorseshoeParams, p: &SquarePoint) -> Result<SquarePoint, HorseshoeError> {
    match params.h_strip(p) {
        Some(0) => SquarePoint::new(&params.contraction * &p.x, &params.expansion * &p.y),
        Some(_) => {
            if params.fold {
                SquarePoint::new(
                    Rational::one() - &params.contraction * &p.x,
                    &params.expansion * &(Rational::one() - &p.y),
                )
            } else {
                SquarePoint::new(
                    Rational::one() - &params.contraction + &params.contraction * &p.x,
                    &params.expansion * &p.y - &params.expansion + Rational::one(),
                )
            }
        }
        None => Err(HorseshoeError::Escape {
            time: 0,
            axis: StripAxis::Horizontal,
        }),
    }
}

/// One backward step, the exact inverse of the branch containing `p`.
pub fn hs_inverse(params: &HorseshoeParams, p: &SquarePoint) -> Result<SquarePoint, HorseshoeError> {
    match params.v_strip(p) {
        Some(0) => SquarePoint::new(&p.x / &params.contraction, &p.y / &params.expansion),
        Some(_) => {
            if params.fold {
                SquarePoint::new(
                    (Rational::one() - &p.x) / &params.contraction,
                    Rational::one() - &p.y / &params.expansion,
                )
            } else {
                SquarePoint::new(
                    (&p.x - (Rational::one() - &params.contraction)) / &params.contraction,
                    (&p.y + &params.expansion - Rational::one()) / &params.expansion,
                )
            }
        }
        None => Err(HorseshoeError::Escape {
            time: 0,
            axis: StripAxis::Vertical,
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RectKind {
    /// Full-height strip pinned by a backward itinerary; width mu^k.
    Vertical,
    /// Full-width strip pinned by a forward itinerary; height lambda^-k.
    Horizontal,
    /// Intersection cell of a two-sided window.
    Cell,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rect {
    pub x_interval: (Rational, Rational),
    pub y_interval: (Rational, Rational),
    pub address: String,
    pub kind: RectKind,
}

impl Rect {
    pub fn contains(&self, p: &SquarePoint) -> bool {
        p.x >= self.x_interval.0
            && p.x <= self.x_interval.1
            && p.y >= self.y_interval.0
            && p.y <= self.y_interval.1
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.x_interval.0 <= other.x_interval.0
            && other.x_interval.1 <= self.x_interval.1
            && self.y_interval.0 <= other.y_interval.0
            && other.y_interval.1 <= self.y_interval.1
    }

    pub fn center(&self) -> SquarePoint {
        let half = rat(1, 2);
        SquarePoint {
            x: (&self.x_interval.0 + &self.x_interval.1) * &half,
            y: (&self.y_interval.0 + &self.y_interval.1) * &half,
        }
    }

    pub fn width(&self) -> Rational {
        &self.x_interval.1 - &self.x_interval.0
    }

    pub fn height(&self) -> Rational {
        &self.y_interval.1 - &self.y_interval.0
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "x_lo": format_rational(&self.x_interval.0),
            "x_hi": format_rational(&self.x_interval.1),
            "y_lo": format_rational(&self.y_interval.0),
            "y_hi": format_rational(&self.y_interval.1),
            "address": self.address,
        })
    }
}

fn branch_image_x(params: &HorseshoeParams, symbol: u8, iv: (Rational, Rational)) -> (Rational, Rational) {
    let mu = &params.contraction;
    if symbol == 0 {
        (mu * &iv.0, mu * &iv.1)
    } else if params.fold {
        (Rational::one() - mu * &iv.1, Rational::one() - mu * &iv.0)
    } else {
        let base = Rational::one() - mu;
        (&base + mu * &iv.0, &base + mu * &iv.1)
    }
}

fn branch_preimage_y(params: &HorseshoeParams, symbol: u8, iv: (Rational, Rational)) -> (Rational, Rational) {
    let l = &params.expansion;
    if symbol == 0 {
        (&iv.0 / l, &iv.1 / l)
    } else if params.fold {
        (
            Rational::one() - &iv.1 / l,
            Rational::one() - &iv.0 / l,
        )
    } else {
        (
            (&iv.0 + l - Rational::one()) / l,
            (&iv.1 + l - Rational::one()) / l,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Vertical,
    Horizontal,
}

/// Address rectangle for a word read outward from the point:
/// vertical words list the V-strips of p, f^-1(p), ...; horizontal words
/// the H-strips of p, f(p), .... Computed by exact interval propagation
/// through the branch affine maps.
pub fn rect_for_address(
    params: &HorseshoeParams,
    word: &[u8],
    orientation: Orientation,
) -> Result<Rect, HorseshoeError> {
    if word.is_empty() {
        return Err(HorseshoeError::EmptyWindow);
    }
    let full = (Rational::zero(), Rational::one());
    match orientation {
        Orientation::Vertical => {
            let mut x = full.clone();
            for &s in word.iter().rev() {
                x = branch_image_x(params, s, x);
            }
            Ok(Rect {
                x_interval: x,
                y_interval: full,
                address: word_text(word),
                kind: RectKind::Vertical,
            })
        }
        Orientation::Horizontal => {
            let mut y = full.clone();
            for &s in word.iter().rev() {
                y = branch_preimage_y(params, s, y);
            }
            Ok(Rect {
                x_interval: full,
                y_interval: y,
                address: word_text(word),
                kind: RectKind::Horizontal,
            })
        }
    }
}

fn word_text(w: &[u8]) -> String {
    w.iter().map(|&s| (b'0' + s) as char).collect()
}

/// Two-sided itinerary window `s_-k ... s_-1 . s_0 s_1 ... s_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolWindow {
    /// Symbols s_-k .. s_-1, leftmost first.
    pub left: Vec<u8>,
    /// Symbols s_0 .. s_k.
    pub right: Vec<u8>,
}

impl SymbolWindow {
    /// Coordinate access within the window; `None` outside.
    pub fn get(&self, i: i64) -> Option<u8> {
        if i >= 0 {
            self.right.get(i as usize).copied()
        } else {
            let k = self.left.len() as i64;
            if -i <= k {
                Some(self.left[(k + i) as usize])
            } else {
                None
            }
        }
    }

    /// Window of an eventually periodic code: left depth symbols before
    /// the origin and depth + 1 from it.
    pub fn from_biseq(code: &BiSeq, depth: usize) -> Self {
        SymbolWindow {
            left: code.window(-(depth as i64), 0),
            right: code.window(0, depth as i64 + 1),
        }
    }
}

impl fmt::Display for SymbolWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", word_text(&self.left), word_text(&self.right))
    }
}

impl FromStr for SymbolWindow {
    type Err = HorseshoeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, r) = s
            .trim()
            .split_once('.')
            .ok_or(HorseshoeError::EmptyWindow)?;
        let left = crate::symbolic::parse_word(l)?;
        let right = crate::symbolic::parse_word(r)?;
        for &sym in left.iter().chain(&right) {
            if sym > 1 {
                return Err(SymbolicError::SymbolOutOfRange(sym, 2).into());
            }
        }
        Ok(SymbolWindow { left, right })
    }
}

/// Itinerary of `p` to depth `k`: s_i is the H-strip of f^i(p) for
/// 0 <= i <= k and s_-i the V-strip of f^(-i+1)(p) for 1 <= i <= k.
/// Escape before depth k reports the failing time.
pub fn encode(
    params: &HorseshoeParams,
    p: &SquarePoint,
    depth: usize,
) -> Result<SymbolWindow, HorseshoeError> {
    let mut right = Vec::with_capacity(depth + 1);
    let mut q = p.clone();
    for i in 0..=depth {
        match params.h_strip(&q) {
            Some(s) => right.push(s),
            None => {
                return Err(HorseshoeError::Escape {
                    time: i as i64,
                    axis: StripAxis::Horizontal,
                })
            }
        }
        if i < depth {
            q = hs_apply(params, &q)?;
        }
    }
    let mut left_rev = Vec::with_capacity(depth);
    let mut r = p.clone();
    for i in 1..=depth {
        match params.v_strip(&r) {
            Some(s) => left_rev.push(s),
            None => {
                return Err(HorseshoeError::Escape {
                    time: -(i as i64 - 1),
                    axis: StripAxis::Vertical,
                })
            }
        }
        if i < depth {
            r = hs_inverse(params, &r)?;
        }
    }
    left_rev.reverse();
    Ok(SymbolWindow {
        left: left_rev,
        right,
    })
}

/// The cell V_(left word) intersect H_(right word): every point with
/// this itinerary window lies inside. Width mu^|left|, height
/// lambda^-|right|.
pub fn decode(params: &HorseshoeParams, window: &SymbolWindow) -> Result<Rect, HorseshoeError> {
    if window.left.is_empty() || window.right.is_empty() {
        return Err(HorseshoeError::EmptyWindow);
    }
    // vertical addresses read outward: s_-1, s_-2, ...
    let outward: Vec<u8> = window.left.iter().rev().copied().collect();
    let v = rect_for_address(params, &outward, Orientation::Vertical)?;
    let h = rect_for_address(params, &window.right, Orientation::Horizontal)?;
    Ok(Rect {
        x_interval: v.x_interval,
        y_interval: h.y_interval,
        address: window.to_string(),
        kind: RectKind::Cell,
    })
}

/// Conjugacy relation between the map and the shift: the window of f(p)
/// must be the shifted window of p on their common indices.
pub fn conjugacy_check(
    params: &HorseshoeParams,
    p: &SquarePoint,
    depth: usize,
) -> Result<bool, HorseshoeError> {
    let s = encode(params, p, depth + 1)?;
    let fp = hs_apply(params, p)?;
    let t = encode(params, &fp, depth)?;
    for j in -(depth as i64)..=(depth as i64) {
        if t.get(j) != s.get(j + 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact periodic point whose bi-infinite itinerary repeats `word`
/// (word[0] at time 0), solved from the affine fixed-point equations of
/// the branch compositions over one period.
pub fn periodic_point_from_code(
    params: &HorseshoeParams,
    word: &[u8],
) -> Result<SquarePoint, HorseshoeError> {
    assert!(!word.is_empty());
    // y-dynamics: branch 0 is y -> l y, branch 1 is y -> -l y + l when
    // folding, y -> l y + 1 - l otherwise
    let l = params.expansion.clone();
    let mut alpha = Rational::one();
    let mut beta = Rational::zero();
    for &s in word {
        let (a, b) = if s == 0 {
            (l.clone(), Rational::zero())
        } else if params.fold {
            (-l.clone(), l.clone())
        } else {
            (l.clone(), Rational::one() - &l)
        };
        // compose y -> a y + b after the current alpha y + beta
        beta = &a * &beta + b;
        alpha = &a * &alpha;
    }
    let y = &beta / &(Rational::one() - &alpha);
    // x-dynamics: branch 0 is x -> mu x, branch 1 is x -> -mu x + 1 when
    // folding, x -> mu x + 1 - mu otherwise
    let mu = params.contraction.clone();
    let mut alpha = Rational::one();
    let mut beta = Rational::zero();
    for &s in word {
        let (a, b) = if s == 0 {
            (mu.clone(), Rational::zero())
        } else if params.fold {
            (-mu.clone(), Rational::one())
        } else {
            (mu.clone(), Rational::one() - &mu)
        };
        beta = &a * &beta + b;
        alpha = &a * &alpha;
    }
    let x = &beta / &(Rational::one() - &alpha);
    let p = SquarePoint::new(x, y)?;
    // the solved point must realize the code
    let window = encode(params, &p, 2 * word.len())?;
    for j in 0..=2 * word.len() {
        debug_assert_eq!(window.right[j], word[j % word.len()]);
    }
    Ok(p)
}

#[derive(Debug, Clone)]
pub struct HsProximalityReport {
    pub symbolic: bool,
    pub certificate: Option<crate::symbolic::AlignmentCertificate>,
    /// Distance profile between the depth-d cells of the shifted codes.
    pub profile: Vec<(u32, f64)>,
    pub min_distance: f64,
    /// Whether the geometric tail behavior matches the symbolic verdict:
    /// exactly zero cell distance over one full period of late times for
    /// a proximal pair, strictly positive for a non-proximal one.
    pub corroborated: bool,
}

/// Symbolic proximality of two codes, cross-checked geometrically: the
/// n-th images of the coded points lie in the cells of the n-shifted
/// windows, whose exact centers track the orbit to within the cell size.
pub fn hs_proximal(
    params: &HorseshoeParams,
    x_code: &BiSeq,
    y_code: &BiSeq,
    depth: usize,
    horizon: u32,
) -> Result<HsProximalityReport, HorseshoeError> {
    let verdict = seq_proximal(x_code, y_code)?;
    let mut profile = Vec::with_capacity(horizon as usize + 1);
    let mut exact: Vec<Rational> = Vec::with_capacity(horizon as usize + 1);
    for n in 0..=horizon {
        let wx = SymbolWindow::from_biseq(&crate::symbolic::shift(x_code, n as i64), depth);
        let wy = SymbolWindow::from_biseq(&crate::symbolic::shift(y_code, n as i64), depth);
        let cx = decode(params, &wx)?.center();
        let cy = decode(params, &wy)?.center();
        let dx = (&cx.x - &cy.x).abs();
        let dy = (&cx.y - &cy.y).abs();
        let d = if dx >= dy { dx } else { dy };
        profile.push((n, crate::exactnum::rational_to_f64(&d)));
        exact.push(d);
    }
    let min_distance = profile
        .iter()
        .map(|(_, d)| *d)
        .fold(f64::INFINITY, f64::min);
    // late-time window long enough to cover one period of the pair
    let period = {
        use num_integer::Integer;
        x_code
            .right_period()
            .len()
            .lcm(&y_code.right_period().len())
    };
    let tail = exact.len().saturating_sub(period.max(1));
    let tail_zero = exact[tail..].iter().all(|d| d.is_zero());
    let tail_positive = exact[tail..].iter().all(|d| !d.is_zero());
    let corroborated = if verdict.proximal {
        tail_zero
    } else {
        tail_positive
    };
    Ok(HsProximalityReport {
        symbolic: verdict.proximal,
        certificate: verdict.certificate,
        profile,
        min_distance,
        corroborated,
    })
}
