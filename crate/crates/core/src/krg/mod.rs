//! Kernel-based random graphs: vertices carry i.i.d. uniform latent features
//! and each pair is joined independently with probability `f(x_u, x_v)`.

mod kernel;
pub mod quadrature;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::census::SubgraphConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from_seed;

pub use kernel::Kernel;

/// A sampled graph together with the latent features that generated it.
#[derive(Debug, Clone)]
pub struct SampledGraph {
    pub graph: Graph,
    pub latents: Vec<f64>,
}

/// Draws one graph. The stream is consumed as `n` latents followed by one
/// uniform per pair `(i, j)`, `i < j`, in lexicographic order.
pub fn sample_graph(n: usize, kernel: &Kernel, seed: u64) -> SampledGraph {
    let mut rng = rng_from_seed(seed);
    let latents: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
    let mut pairs = Vec::new();
    match kernel {
        Kernel::Constant { q } => {
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen::<f64>() < *q {
                        pairs.push((i as u32, j as u32));
                    }
                }
            }
        }
        Kernel::Block { probs, .. } => {
            let blocks: Vec<usize> = latents.iter().map(|&x| kernel.block_of(x)).collect();
            for i in 0..n {
                let row = &probs[blocks[i]];
                for j in i + 1..n {
                    if rng.gen::<f64>() < row[blocks[j]] {
                        pairs.push((i as u32, j as u32));
                    }
                }
            }
        }
        _ => {
            for i in 0..n {
                for j in i + 1..n {
                    let p = kernel.eval(latents[i], latents[j]);
                    debug_assert!((0.0..=1.0).contains(&p));
                    if rng.gen::<f64>() < p {
                        pairs.push((i as u32, j as u32));
                    }
                }
            }
        }
    }
    SampledGraph {
        graph: Graph::from_sorted_pairs(n, &pairs),
        latents,
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    /// Closed form when the kernel has one, quadrature up to four pattern
    /// vertices, Monte Carlo beyond.
    #[default]
    Auto,
    ClosedForm,
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentBudget {
    /// Gauss–Legendre points per axis and smooth piece.
    pub quadrature_order: usize,
    pub mc_draws: usize,
    pub seed: u64,
}

impl Default for MomentBudget {
    fn default() -> Self {
        MomentBudget {
            quadrature_order: 32,
            mc_draws: 1_000_000,
            seed: 0x5eed,
        }
    }
}

/// `E[prod_{uv in F} f(X_u, X_v)]` over i.i.d. uniform latents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelMoment {
    pub config: SubgraphConfig,
    pub value: f64,
    /// The method actually used; never `Auto`.
    pub method: MomentMethod,
    /// Standard error for Monte Carlo, difference against a half-order rule
    /// for quadrature, zero for closed forms.
    pub error_estimate: f64,
}

pub fn kernel_moment(
    kernel: &Kernel,
    config: SubgraphConfig,
    method: MomentMethod,
    budget: &MomentBudget,
) -> Result<KernelMoment> {
    if config.edge_count() == 0 {
        return Err(Error::EdgelessMoment);
    }
    kernel.validate()?;
    let method = match method {
        MomentMethod::Auto if kernel.has_closed_form() => MomentMethod::ClosedForm,
        MomentMethod::Auto if config.node_count() <= 4 => MomentMethod::Quadrature,
        MomentMethod::Auto => MomentMethod::MonteCarlo,
        m => m,
    };
    let (value, error_estimate) = match method {
        MomentMethod::ClosedForm => (closed_form(kernel, config)?, 0.0),
        MomentMethod::Quadrature => {
            let order = budget.quadrature_order.max(1);
            let fine = quadrature_moment(kernel, config, order);
            let coarse = quadrature_moment(kernel, config, (order / 2).max(1));
            (fine, (fine - coarse).abs())
        }
        MomentMethod::MonteCarlo => monte_carlo(kernel, config, budget.mc_draws, budget.seed)?,
        MomentMethod::Auto => unreachable!("resolved above"),
    };
    Ok(KernelMoment {
        config,
        value: value.clamp(0.0, 1.0),
        method,
        error_estimate,
    })
}

fn closed_form(kernel: &Kernel, config: SubgraphConfig) -> Result<f64> {
    let edges = config.pattern_edges();
    match kernel {
        Kernel::Constant { q } => Ok(q.powi(edges.len() as i32)),
        Kernel::Block { probs, .. } => {
            let cuts = kernel.cuts();
            let widths: Vec<f64> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
            let m = probs.len();
            let d = config.node_count();
            let mut assign = vec![0usize; d];
            let mut total = 0.0;
            // Odometer over all m^d block assignments.
            loop {
                let mut term: f64 = assign.iter().map(|&a| widths[a]).product();
                for &(u, v) in &edges {
                    term *= probs[assign[u]][assign[v]];
                }
                total += term;
                let mut pos = 0;
                loop {
                    if pos == d {
                        return Ok(total);
                    }
                    assign[pos] += 1;
                    if assign[pos] < m {
                        break;
                    }
                    assign[pos] = 0;
                    pos += 1;
                }
            }
        }
        Kernel::Product { a, b } => {
            // The integrand factorizes over vertices: prod_v E[g(X)^deg(v)].
            let mut degree = vec![0i32; config.node_count()];
            for &(u, v) in &edges {
                degree[u] += 1;
                degree[v] += 1;
            }
            Ok(degree.iter().map(|&d| linear_power_mean(*a, *b, d)).product())
        }
        Kernel::Logistic { .. } => Err(Error::Kernel(
            "logistic kernel has no closed-form moment; use quadrature or monte_carlo".into(),
        )),
    }
}

/// `E[(a + bX)^d]` for `X ~ U(0, 1)`.
fn linear_power_mean(a: f64, b: f64, d: i32) -> f64 {
    if b.abs() < 1e-12 {
        return a.powi(d);
    }
    ((a + b).powi(d + 1) - a.powi(d + 1)) / ((d + 1) as f64 * b)
}

/// Tensor-product rule over `[0,1]^|V_F|`, split at block breakpoints.
fn quadrature_moment(kernel: &Kernel, config: SubgraphConfig, order: usize) -> f64 {
    let rule = quadrature::composite(order, &kernel.cuts());
    let d = config.node_count();
    // Edges back to earlier vertices, so partial products can be pruned.
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); d];
    for (u, v) in config.pattern_edges() {
        back[u.max(v)].push(u.min(v));
    }
    let mut xs = vec![0.0; d];
    integrate(kernel, &rule, &back, &mut xs, 0, 1.0)
}

fn integrate(
    kernel: &Kernel,
    rule: &[(f64, f64)],
    back: &[Vec<usize>],
    xs: &mut [f64],
    depth: usize,
    acc: f64,
) -> f64 {
    if depth == xs.len() {
        return acc;
    }
    let mut total = 0.0;
    for &(x, w) in rule {
        xs[depth] = x;
        let mut term = acc * w;
        for &u in &back[depth] {
            term *= kernel.eval(xs[u], x);
        }
        if term != 0.0 {
            total += integrate(kernel, rule, back, xs, depth + 1, term);
        }
    }
    total
}

fn monte_carlo(kernel: &Kernel, config: SubgraphConfig, draws: usize, seed: u64) -> Result<(f64, f64)> {
    if draws < 2 {
        return Err(Error::invalid("Monte Carlo moment needs at least 2 draws"));
    }
    let mut rng = rng_from_seed(seed);
    let edges = config.pattern_edges();
    let mut xs = vec![0.0; config.node_count()];
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..draws {
        xs.iter_mut().for_each(|x| *x = rng.gen());
        let v: f64 = edges.iter().map(|&(u, w)| kernel.eval(xs[u], xs[w])).product();
        sum += v;
        sum_sq += v * v;
    }
    let n = draws as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok((mean, (var / n).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::default_configuration_set;

    fn moment(k: &Kernel, c: SubgraphConfig, m: MomentMethod) -> KernelMoment {
        kernel_moment(k, c, m, &MomentBudget::default()).unwrap()
    }

    #[test]
    fn trivial_kernels() {
        let g = sample_graph(7, &Kernel::constant(0.0).unwrap(), 3).graph;
        assert_eq!((g.n(), g.edge_count()), (7, 0));
        let g = sample_graph(5, &Kernel::constant(1.0).unwrap(), 3).graph;
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn constant_moments() {
        let k = Kernel::constant(0.5).unwrap();
        assert_eq!(moment(&k, SubgraphConfig::triangle(), MomentMethod::Auto).value, 0.125);
        let k = Kernel::constant(0.3).unwrap();
        let m = moment(&k, SubgraphConfig::star(2), MomentMethod::ClosedForm);
        assert!((m.value - 0.09).abs() < 1e-15);
        let q = moment(&k, SubgraphConfig::star(2), MomentMethod::Quadrature);
        assert!((q.value - 0.09).abs() < 1e-13);
    }

    #[test]
    fn block_edge_moment() {
        let k = Kernel::equal_blocks(vec![vec![0.8, 0.1], vec![0.1, 0.8]]).unwrap();
        let m = moment(&k, SubgraphConfig::star(1), MomentMethod::Auto);
        assert_eq!(m.method, MomentMethod::ClosedForm);
        assert!((m.value - 0.45).abs() < 1e-15);
    }

    #[test]
    fn isolate_rejected() {
        let k = Kernel::constant(0.5).unwrap();
        let err = kernel_moment(&k, SubgraphConfig::isolate(), MomentMethod::Auto, &MomentBudget::default());
        assert!(matches!(err, Err(Error::EdgelessMoment)));
    }

    #[test]
    fn product_closed_form_matches_quadrature() {
        let k = Kernel::product(0.2, 0.6).unwrap();
        for c in default_configuration_set().into_iter().filter(|c| c.node_count() <= 4 && c.edge_count() > 0) {
            let exact = moment(&k, c, MomentMethod::ClosedForm).value;
            let quad = moment(&k, c, MomentMethod::Quadrature).value;
            assert!((exact - quad).abs() < 1e-12, "{c}: {exact} vs {quad}");
        }
    }

    #[test]
    fn logistic_auto_method() {
        let k = Kernel::logistic(0.3, 0.05).unwrap();
        assert_eq!(moment(&k, SubgraphConfig::triangle(), MomentMethod::Auto).method, MomentMethod::Quadrature);
        let budget = MomentBudget { mc_draws: 20_000, ..MomentBudget::default() };
        let m = kernel_moment(&k, SubgraphConfig::cycle5(), MomentMethod::Auto, &budget).unwrap();
        assert_eq!(m.method, MomentMethod::MonteCarlo);
        assert!(m.error_estimate > 0.0);
    }
}
