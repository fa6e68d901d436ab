//! Quadrature rules shared by the solver and the verification harness.
//!
//! * [`gauss_legendre`] — n-point rule on `[-1, 1]`, nodes by Newton iteration.
//! * [`gk21`] / [`adaptive_gk21`] — 10/21-point Gauss–Kronrod panels with
//!   bisection driven by the Gauss–Kronrod difference.
//! * [`tanh_sinh`] — double-exponential rule for integrable endpoint
//!   singularities. The integrand receives the distances to both endpoints so
//!   that kernels like `(b-x)^(a-1)` are evaluated without cancellation.
//! * [`WynnEpsilon`] — sequence acceleration for oscillatory tail sums.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

/// Integral value with an error estimate.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// nodes in increasing order.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pnm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pnm1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// The 21 abscissae of the Kronrod rule mapped to `[a, b]`, increasing.
pub fn gk21_nodes(a: f64, b: f64) -> [f64; 21] {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut out = [0.0; 21];
    for j in 0..10 {
        out[j] = c - r * XGK[j];
        out[20 - j] = c + r * XGK[j];
    }
    out[10] = c;
    out
}

/// Kronrod and Gauss weights matching [`gk21_nodes`] on a panel of half-width `r`.
pub fn gk21_weights(r: f64) -> ([f64; 21], [f64; 21]) {
    let mut wk = [0.0; 21];
    let mut wg = [0.0; 21];
    for j in 0..10 {
        wk[j] = r * WGK[j];
        wk[20 - j] = r * WGK[j];
    }
    wk[10] = r * WGK[10];
    // Gauss nodes are XGK[1], XGK[3], ..., XGK[9]
    for (g, j) in (1..10).step_by(2).enumerate() {
        wg[j] = r * WG[g];
        wg[20 - j] = r * WG[g];
    }
    (wk, wg)
}

/// One 21-point Gauss–Kronrod panel. Returns `(kronrod, gauss)`.
pub fn gk21<F>(f: &F, a: f64, b: f64) -> (Complex64, Complex64)
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let nodes = gk21_nodes(a, b);
    let (wk, wg) = gk21_weights(0.5 * (b - a));
    let mut k = Complex64::new(0.0, 0.0);
    let mut g = Complex64::new(0.0, 0.0);
    for i in 0..21 {
        let v = f(nodes[i]);
        k += v * wk[i];
        if wg[i] != 0.0 {
            g += v * wg[i];
        }
    }
    (k, g)
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss–Kronrod integration on `[a, b]`.
///
/// Bisects the panel with the largest error until the total estimate falls
/// below `max(abs_tol, rel_tol·|I|)` or `max_panels` is reached.
pub fn adaptive_gk21<F>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> QuadResult
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let mut heap = BinaryHeap::new();
    let mk = |a: f64, b: f64| {
        let (k, g) = gk21(f, a, b);
        Panel {
            a,
            b,
            value: k,
            error: (k - g).norm(),
        }
    };
    let first = mk(a, b);
    let mut total = first.value;
    let mut err = first.error;
    let mut evaluations = 21;
    heap.push(first);
    while err > abs_tol.max(rel_tol * total.norm()) && heap.len() < max_panels {
        let worst = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let left = mk(worst.a, mid);
        let right = mk(mid, worst.b);
        evaluations += 42;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed drift from the incremental updates
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for p in heap.iter() {
        value += p.value;
        error += p.error;
    }
    QuadResult {
        value,
        error,
        evaluations,
    }
}

/// Tanh-sinh quadrature of `f(x, x - a, b - x)` over `[a, b]`.
///
/// Level refinement halves the step until successive estimates agree to
/// `max(abs_tol, rel_tol·|I|)`; the reported error is that last difference.
pub fn tanh_sinh<F>(f: &F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> QuadResult
where
    F: Fn(f64, f64, f64) -> Complex64 + ?Sized,
{
    tanh_sinh_levels(f, a, b, abs_tol, rel_tol, 3, 10)
}

/// [`tanh_sinh`] with explicit minimum and maximum refinement levels.
pub fn tanh_sinh_levels<F>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    min_level: u32,
    max_level: u32,
) -> QuadResult
where
    F: Fn(f64, f64, f64) -> Complex64 + ?Sized,
{
    const T_MAX: f64 = 5.0;
    let zero = Complex64::new(0.0, 0.0);
    if b == a {
        return QuadResult {
            value: zero,
            error: 0.0,
            evaluations: 0,
        };
    }
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut evaluations = 0usize;

    // contribution of the node pair at +t and -t (or the centre when t == 0)
    let mut eval_t = |t: f64| -> Complex64 {
        let u = 0.5 * PI * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let w = r * 0.5 * PI * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if w == 0.0 || !w.is_finite() {
            return zero;
        }
        let near = 2.0 * r * e / (1.0 + e); // distance to the nearer endpoint
        let far = 2.0 * r / (1.0 + e);
        if t == 0.0 {
            evaluations += 1;
            return f(c, r, r) * w;
        }
        if near == 0.0 {
            return zero;
        }
        evaluations += 2;
        // t > 0 approaches b, t < 0 approaches a; evaluate both mirror nodes
        let xb = b - near;
        let xa = a + near;
        let vb = f(xb, far, near);
        let va = f(xa, near, far);
        (vb + va) * w
    };

    let mut h = 1.0;
    let mut sum = eval_t(0.0);
    let mut k = 1.0;
    while k * h <= T_MAX {
        sum += eval_t(k * h);
        k += 1.0;
    }
    let mut estimate = sum * h;
    let mut error = f64::INFINITY;
    for level in 1..=max_level {
        h *= 0.5;
        let mut added = zero;
        let mut k = 1.0;
        while k * h <= T_MAX {
            added += eval_t(k * h);
            k += 2.0;
        }
        sum += added;
        let next = sum * h;
        error = (next - estimate).norm();
        estimate = next;
        if level >= min_level && error <= abs_tol.max(rel_tol * estimate.norm()) {
            break;
        }
    }
    QuadResult {
        value: estimate,
        error,
        evaluations,
    }
}

/// Wynn's epsilon algorithm over a stream of partial sums.
#[derive(Clone, Debug, Default)]
pub struct WynnEpsilon {
    // last row of the epsilon table, even columns hold estimates
    row: Vec<Complex64>,
    count: usize,
    last: Option<Complex64>,
    previous: Option<Complex64>,
}

impl WynnEpsilon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Feeds the next partial sum and returns the current accelerated limit.
    pub fn push(&mut self, s: Complex64) -> Complex64 {
        let mut new_row = Vec::with_capacity(self.row.len() + 1);
        new_row.push(s);
        let mut prev_zero = Complex64::new(0.0, 0.0); // eps_{-1} column
        for j in 0..self.row.len() {
            let diff = new_row[j] - self.row[j];
            let below = if j == 0 { prev_zero } else { self.row[j - 1] };
            let val = if diff.norm() == 0.0 || !diff.norm().is_finite() {
                // degenerate: the sequence has converged in this column
                Complex64::new(f64::INFINITY, 0.0)
            } else {
                below + Complex64::new(1.0, 0.0) / diff
            };
            prev_zero = Complex64::new(0.0, 0.0);
            if !val.re.is_finite() || !val.im.is_finite() {
                break;
            }
            new_row.push(val);
        }
        self.row = new_row;
        self.count += 1;
        // best estimate: highest even column available
        let even = (self.row.len() - 1) / 2 * 2;
        let est = self.row[even];
        self.previous = self.last;
        self.last = Some(est);
        est
    }

    /// Difference between the last two accelerated estimates.
    pub fn change(&self) -> f64 {
        match (self.last, self.previous) {
            (Some(a), Some(b)) => (a - b).norm(),
            _ => f64::INFINITY,
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}
