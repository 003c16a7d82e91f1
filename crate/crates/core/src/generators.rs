//! Instance families: the independent-set reduction, truncated equal-revenue
//! marginals, and down-rounded discretizations of continuous marginals.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Roots;

use crate::error::{Error, Result};
use crate::model::{Instance, Item, Marginal, Price, Pricing};
use crate::rational::Rational;

/// Simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidParams(format!("edge {u}-{v} outside 1..={n}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new() }
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v, v + 1))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n > 2 {
            g.edges.insert((1, n));
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)))).expect("valid")
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &u)| set[k + 1..].iter().all(|&v| u != v && !self.adjacent(u, v)))
    }

    /// Every independent set, including the empty one. Exhaustive; for small graphs.
    pub fn independent_sets(&self) -> Vec<Vec<usize>> {
        assert!(self.n <= 20, "exhaustive search is limited to 20 vertices");
        (0u32..1 << self.n)
            .map(|mask| (1..=self.n).filter(|v| mask >> (v - 1) & 1 == 1).collect::<Vec<_>>())
            .filter(|s| self.is_independent(s))
            .collect()
    }

    pub fn max_independent_set_size(&self) -> usize {
        self.independent_sets().iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Edge-list text: one `u v` pair per line, 1-indexed. A line holding a
/// single integer sets the vertex count; otherwise it is the largest label.
/// Blank lines and `#` comments are skipped.
impl FromStr for Graph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidParams(format!("line {}: {e}", lineno + 1)))?;
            match nums[..] {
                [count] => n = Some(count),
                [u, v] => edges.push((u, v)),
                _ => {
                    return Err(Error::InvalidParams(format!(
                        "line {}: expected `u v` or a vertex count",
                        lineno + 1
                    )))
                }
            }
        }
        let n = n.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0));
        Graph::new(n, edges)
    }
}

fn exact_sqrt(n: usize) -> Result<usize> {
    let r = n.sqrt();
    if r * r == n {
        Ok(r)
    } else {
        Err(Error::NotPerfectSquare(n))
    }
}

/// The reduction instance: vertex `i` takes value `2^(i n)` w.p. `2^(-i n)`,
/// value `2^(j n)` w.p. `2^(-j n)/sqrt(n)` for each neighbor `j > i`, and 0 otherwise.
pub fn gen_mis(g: &Graph) -> Result<Instance> {
    let n = g.vertices();
    let root = exact_sqrt(n)?;
    let step = n as i64;
    let mut items = Vec::with_capacity(n);
    for i in 1..=n {
        let mut pairs = vec![(Rational::pow2(i as i64 * step), Rational::pow2(-(i as i64) * step))];
        for j in i + 1..=n {
            if g.adjacent(i, j) {
                pairs.push((
                    Rational::pow2(j as i64 * step),
                    Rational::pow2(-(j as i64) * step) / Rational::from(root as u64),
                ));
            }
        }
        let used: Rational = pairs.iter().map(|(_, p)| p).sum();
        let rest = Rational::one() - used;
        if rest.is_negative() {
            return Err(Error::InvalidParams(format!("vertex {i} has negative zero-value mass")));
        }
        pairs.push((Rational::zero(), rest));
        items.push(Item {
            name: format!("v{i}"),
            marginal: Marginal::new(pairs)?,
        });
    }
    Instance::new(items)
}

/// `(1/2) (1 - sqrt(n) / 2^(n-1)) s`.
pub fn mis_lower_bound(s: usize, n: usize) -> Result<Rational> {
    let root = exact_sqrt(n)?;
    let gap = Rational::from(root as u64) * Rational::pow2(1 - n as i64);
    Ok(Rational::new(1, 2) * (Rational::one() - gap) * Rational::from(s as u64))
}

/// `(m + 2) sqrt(n) + 3 n 2^(-n)`.
pub fn mis_upper_bound(m: usize, n: usize) -> Result<Rational> {
    let root = exact_sqrt(n)?;
    Ok(Rational::from(((m + 2) * root) as u64) + Rational::from(3 * n as u64) * Rational::pow2(-(n as i64)))
}

/// Prices vertex `i` of `set` (1-based) at `2^(i n - 1)` and withholds the rest.
pub fn is_pricing(g: &Graph, set: &[usize]) -> Result<Pricing> {
    let n = g.vertices();
    let mut prices = vec![Price::NotOffered; n];
    for &i in set {
        if i == 0 || i > n {
            return Err(Error::InvalidParams(format!("vertex {i} outside 1..={n}")));
        }
        prices[i - 1] = Price::Offered(Rational::pow2((i * n) as i64 - 1));
    }
    Ok(Pricing::new(prices))
}

const EQREV_BITS: u32 = 32;

/// Equal-revenue marginal truncated at `2^e` on `grid` geometric cells.
///
/// Grid values are rounded down so that `1/v` is a multiple of `2^-32`; each
/// value then carries the exact mass of its cell and `v * Pr[value >= v] = 1`.
pub fn eqrev_marginal(e: u32, grid: usize) -> Result<Marginal> {
    if grid < 2 {
        return Err(Error::InvalidParams(format!("grid must have at least 2 points, got {grid}")));
    }
    if e == 0 || e >= EQREV_BITS {
        return Err(Error::InvalidParams(format!("truncation exponent {e} outside 1..{EQREV_BITS}")));
    }
    let full = 1u64 << EQREV_BITS;
    let mut inv: Vec<u64> = (0..grid)
        .map(|k| {
            let g = 2f64.powf(e as f64 * k as f64 / grid as f64);
            ((full as f64 / g).ceil() as u64).min(full)
        })
        .collect();
    inv[0] = full;
    inv.dedup();
    inv.push(full >> e);
    let unit = Rational::pow2(-(EQREV_BITS as i64));
    let mut pairs = Vec::with_capacity(inv.len());
    for w in inv.windows(2) {
        let value = Rational::from(full) / Rational::from(w[0]);
        pairs.push((value, Rational::from(w[0] - w[1]) * &unit));
    }
    pairs.push((Rational::pow2(e as i64), Rational::pow2(-(e as i64))));
    Marginal::new(pairs)
}

/// Items `j = 1..=n` with equal-revenue marginals truncated at `t_j = 2^(j+1)`;
/// returns the instance and the truncation points.
pub fn gen_truncated_eqrev(n: usize, grid: usize) -> Result<(Instance, Vec<Rational>)> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    let marginals = (1..=n)
        .map(|j| eqrev_marginal(j as u32 + 1, grid))
        .collect::<Result<Vec<_>>>()?;
    let t = (1..=n).map(|j| Rational::pow2(j as i64 + 1)).collect();
    Ok((Instance::from_marginals(marginals)?, t))
}

/// `n` copies of the equal-revenue marginal truncated at `2^e`.
pub fn gen_identical_eqrev(n: usize, e: u32, grid: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    let m = eqrev_marginal(e, grid)?;
    Instance::from_marginals(vec![m; n])
}

/// Left endpoints of `m` equal cells of `U[a, b]`, each of mass `1/m`.
pub fn discretize_uniform(a: &Rational, b: &Rational, m: usize) -> Result<Marginal> {
    if a.is_negative() || a >= b {
        return Err(Error::InvalidRange(format!("need 0 <= a < b, got [{a}, {b}]")));
    }
    if m < 2 {
        return Err(Error::InvalidRange(format!("need at least 2 cells, got {m}")));
    }
    let width = (b - a) / Rational::from(m as u64);
    let mass = Rational::new(1, m as i64);
    Marginal::new((0..m).map(|k| (a + &width * Rational::from(k as u64), mass.clone())))
}

pub const DEFAULT_EXP_DENOM: u64 = 1_000_000;

/// Exponential with rate `lambda` on `m` equal-mass quantile cells of
/// `[0, q_cap]`, values rounded down to multiples of `1/10^6`; the remaining
/// `1 - q_cap` sits at the value of quantile `q_cap`.
pub fn discretize_exponential(lambda: &Rational, m: usize, q_cap: &Rational) -> Result<Marginal> {
    if !lambda.is_positive() {
        return Err(Error::InvalidParams(format!("rate must be positive, got {lambda}")));
    }
    discretize_exponential_rate(lambda.to_f64(), m, q_cap, DEFAULT_EXP_DENOM)
}

/// [`discretize_exponential`] with a floating-point rate and a chosen rounding denominator.
pub fn discretize_exponential_rate(lambda: f64, m: usize, q_cap: &Rational, denom: u64) -> Result<Marginal> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParams(format!("rate must be positive, got {lambda}")));
    }
    if m == 0 || denom == 0 {
        return Err(Error::InvalidParams("need at least one cell and a positive denominator".into()));
    }
    if !q_cap.is_positive() || q_cap >= &Rational::one() {
        return Err(Error::InvalidParams(format!("q_cap must lie in (0, 1), got {q_cap}")));
    }
    let value = |q: &Rational| -> Result<Rational> {
        let x = -(1.0 - q.to_f64()).ln() / lambda;
        Rational::floor_f64(x.max(0.0), denom)
            .ok_or_else(|| Error::InvalidParams(format!("value at quantile {q} is not finite")))
    };
    let mass = q_cap / Rational::from(m as u64);
    let mut pairs = Vec::with_capacity(m + 1);
    for k in 0..m {
        let q = &mass * Rational::from(k as u64);
        pairs.push((value(&q)?, mass.clone()));
    }
    pairs.push((value(q_cap)?, Rational::one() - q_cap));
    Marginal::new(pairs)
}

/// Exponential discretization with median `mu`, i.e. rate `ln 2 / mu`.
pub fn discretize_exponential_median(mu: &Rational, m: usize, q_cap: &Rational) -> Result<Marginal> {
    if !mu.is_positive() {
        return Err(Error::InvalidParams(format!("median must be positive, got {mu}")));
    }
    discretize_exponential_rate(std::f64::consts::LN_2 / mu.to_f64(), m, q_cap, DEFAULT_EXP_DENOM)
}
