//! Globally adaptive Gauss–Kronrod (7/15) integration over a list of pieces.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{QuadOptions, QuadratureResult};

pub(crate) type ScalarFn<'a> = Box<dyn Fn(f64) -> f64 + Sync + 'a>;

/// One scalar integrand on one interval. A quadrature problem is a sum of pieces.
pub(crate) struct Piece<'a> {
    pub f: ScalarFn<'a>,
    pub a: f64,
    pub b: f64,
}

impl<'a> Piece<'a> {
    pub fn new(a: f64, b: f64, f: impl Fn(f64) -> f64 + Sync + 'a) -> Self {
        Piece { f: Box::new(f), a, b }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Kronrod value and `|K15 − G7|` on `[a, b]`.
pub(crate) fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

#[derive(Clone, Copy)]
struct Interval {
    piece: usize,
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

#[derive(PartialEq)]
struct Key {
    err: f64,
    id: usize,
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then(other.id.cmp(&self.id))
    }
}

fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Bisects the interval with the largest error estimate until the summed estimate
/// meets `tol·|value|` or the evaluation budget runs out; in the latter case the result
/// still counts as converged when the estimate is within `tol·(1 + |value|)`. The returned value is
/// summed in piece/position order, so it does not depend on the refinement history.
pub(crate) fn integrate(pieces: &[Piece<'_>], opts: &QuadOptions) -> QuadratureResult {
    let mut intervals: Vec<Interval> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    let mut frozen_err = 0.0;

    for (i, p) in pieces.iter().enumerate() {
        if p.b == p.a {
            continue;
        }
        let (value, err) = gk15(&*p.f, p.a, p.b);
        evaluations += 15;
        heap.push(Key { err, id: intervals.len() });
        intervals.push(Interval { piece: i, a: p.a, b: p.b, value, err });
    }

    let totals =
        |iv: &[Interval]| (neumaier(iv.iter().map(|x| x.value)), iv.iter().map(|x| x.err).sum::<f64>());
    let (mut value, mut err) = totals(&intervals);
    let mut since_resum = 0;

    let converged = loop {
        if !value.is_finite() || !err.is_finite() {
            break false;
        }
        if opts.refined(err, value) {
            break true;
        }
        if evaluations + 30 > opts.budget {
            break opts.acceptable(err, value);
        }
        let Some(Key { id, .. }) = heap.pop() else {
            // everything left is below resolution
            break opts.acceptable(err - frozen_err, value);
        };
        let iv = intervals[id];
        let mid = 0.5 * (iv.a + iv.b);
        if !(mid > iv.a.min(iv.b) && mid < iv.a.max(iv.b)) || (iv.b - iv.a).abs() < 1e-300 {
            frozen_err += iv.err;
            continue;
        }
        let f = &*pieces[iv.piece].f;
        let (v1, e1) = gk15(f, iv.a, mid);
        let (v2, e2) = gk15(f, mid, iv.b);
        evaluations += 30;
        value += v1 + v2 - iv.value;
        err += e1 + e2 - iv.err;
        intervals[id] = Interval { piece: iv.piece, a: iv.a, b: mid, value: v1, err: e1 };
        heap.push(Key { err: e1, id });
        heap.push(Key { err: e2, id: intervals.len() });
        intervals.push(Interval { piece: iv.piece, a: mid, b: iv.b, value: v2, err: e2 });

        since_resum += 1;
        if since_resum == 64 {
            (value, err) = totals(&intervals);
            since_resum = 0;
        }
    };

    intervals.sort_by(|x, y| x.piece.cmp(&y.piece).then(x.a.total_cmp(&y.a)));
    let (value, err) = totals(&intervals);
    let converged = converged && value.is_finite();
    QuadratureResult {
        value,
        error_estimate: if value.is_finite() { err } else { f64::INFINITY },
        evaluations: evaluations.max(1),
        converged,
    }
}
