use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric edge-probability function on `[0,1]^2`.
///
/// Parameters are validated by the constructors and by [`Kernel::validate`];
/// a validated kernel evaluates into `[0, 1]` everywhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Kernel {
    Constant {
        q: f64,
    },
    /// Piecewise constant: block `a` covers `[breakpoints[a-1], breakpoints[a])`.
    Block {
        probs: Vec<Vec<f64>>,
        breakpoints: Vec<f64>,
    },
    /// `f(x, y) = g(x) g(y)` with `g(x) = a + b x`.
    Product {
        a: f64,
        b: f64,
    },
    /// `f(x, y) = 1 / (1 + exp((|x - y| - center) / scale))`.
    Logistic {
        center: f64,
        scale: f64,
    },
}

impl Kernel {
    pub fn constant(q: f64) -> Result<Kernel> {
        let k = Kernel::Constant { q };
        k.validate()?;
        Ok(k)
    }

    pub fn block(probs: Vec<Vec<f64>>, breakpoints: Vec<f64>) -> Result<Kernel> {
        let k = Kernel::Block { probs, breakpoints };
        k.validate()?;
        Ok(k)
    }

    /// Block kernel with `m` blocks of width `1/m`.
    pub fn equal_blocks(probs: Vec<Vec<f64>>) -> Result<Kernel> {
        let m = probs.len();
        let breakpoints = (1..m).map(|a| a as f64 / m as f64).collect();
        Kernel::block(probs, breakpoints)
    }

    pub fn product(a: f64, b: f64) -> Result<Kernel> {
        let k = Kernel::Product { a, b };
        k.validate()?;
        Ok(k)
    }

    pub fn logistic(center: f64, scale: f64) -> Result<Kernel> {
        let k = Kernel::Logistic { center, scale };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        match self {
            Kernel::Constant { q } => {
                if !unit(*q) {
                    return Err(Error::Kernel(format!("constant probability {q} outside [0, 1]")));
                }
            }
            Kernel::Block { probs, breakpoints } => {
                let m = probs.len();
                if m == 0 {
                    return Err(Error::Kernel("block kernel needs at least one block".into()));
                }
                for (i, row) in probs.iter().enumerate() {
                    if row.len() != m {
                        return Err(Error::Kernel(format!(
                            "block matrix row {i} has {} entries, expected {m}",
                            row.len()
                        )));
                    }
                    for (j, &p) in row.iter().enumerate() {
                        if !unit(p) {
                            return Err(Error::Kernel(format!(
                                "block probability {p} at ({i}, {j}) outside [0, 1]"
                            )));
                        }
                        if p != probs[j][i] {
                            return Err(Error::Kernel(format!(
                                "block matrix is not symmetric at ({i}, {j})"
                            )));
                        }
                    }
                }
                if breakpoints.len() + 1 != m {
                    return Err(Error::Kernel(format!(
                        "{m} blocks need {} breakpoints, got {}",
                        m - 1,
                        breakpoints.len()
                    )));
                }
                let mut prev = 0.0;
                for &b in breakpoints {
                    if !(b > prev && b < 1.0) {
                        return Err(Error::Kernel(format!(
                            "breakpoints must increase strictly inside (0, 1), got {breakpoints:?}"
                        )));
                    }
                    prev = b;
                }
            }
            Kernel::Product { a, b } => {
                if !unit(*a) || !unit(a + b) {
                    return Err(Error::Kernel(format!(
                        "product kernel g(x) = {a} + {b} x leaves [0, 1] on [0, 1]"
                    )));
                }
            }
            Kernel::Logistic { center, scale } => {
                if !center.is_finite() || !(scale.is_finite() && *scale > 0.0) {
                    return Err(Error::Kernel(format!(
                        "logistic kernel needs finite center and positive scale, got ({center}, {scale})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Kernel::Constant { q } => *q,
            Kernel::Block { probs, breakpoints } => {
                probs[block_index(breakpoints, x)][block_index(breakpoints, y)]
            }
            Kernel::Product { a, b } => (a + b * x) * (a + b * y),
            Kernel::Logistic { center, scale } => {
                1.0 / (1.0 + (((x - y).abs() - center) / scale).exp())
            }
        }
    }

    /// Interval endpoints between which the kernel is smooth, `0` and `1`
    /// included.
    pub fn cuts(&self) -> Vec<f64> {
        let mut cuts = vec![0.0];
        if let Kernel::Block { breakpoints, .. } = self {
            cuts.extend(breakpoints);
        }
        cuts.push(1.0);
        cuts
    }

    /// Block index for block kernels, `0` otherwise.
    pub(crate) fn block_of(&self, x: f64) -> usize {
        match self {
            Kernel::Block { breakpoints, .. } => block_index(breakpoints, x),
            _ => 0,
        }
    }

    pub fn has_closed_form(&self) -> bool {
        !matches!(self, Kernel::Logistic { .. })
    }
}

fn block_index(breakpoints: &[f64], x: f64) -> usize {
    breakpoints.partition_point(|&b| b <= x)
}

fn join(values: &[f64]) -> String {
    values.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

/// Short textual form: `constant:0.3`, `block:0.8,0.1;0.1,0.8@0.5`,
/// `product:0.2,0.6`, `logistic:0.3,0.05`. The block breakpoints after `@`
/// may be omitted for equal-width blocks.
impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::Constant { q } => write!(f, "constant:{q}"),
            Kernel::Block { probs, breakpoints } => {
                let rows: Vec<String> = probs.iter().map(|r| join(r)).collect();
                write!(f, "block:{}", rows.join(";"))?;
                if !breakpoints.is_empty() {
                    write!(f, "@{}", join(breakpoints))?;
                }
                Ok(())
            }
            Kernel::Product { a, b } => write!(f, "product:{a},{b}"),
            Kernel::Logistic { center, scale } => write!(f, "logistic:{center},{scale}"),
        }
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kernel> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Kernel(format!("kernel spec `{s}` lacks `kind:` prefix")))?;
        let numbers = |text: &str| -> Result<Vec<f64>> {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Kernel(format!("bad number `{}` in `{s}`", t.trim())))
                })
                .collect()
        };
        let pair = |text: &str| -> Result<(f64, f64)> {
            match numbers(text)?.as_slice() {
                &[x, y] => Ok((x, y)),
                _ => Err(Error::Kernel(format!("`{s}` needs exactly two parameters"))),
            }
        };
        match kind.trim().to_ascii_lowercase().as_str() {
            "constant" | "er" => match numbers(args)?.as_slice() {
                &[q] => Kernel::constant(q),
                _ => Err(Error::Kernel(format!("`{s}` needs one probability"))),
            },
            "block" => {
                let (matrix, breaks) = match args.split_once('@') {
                    Some((m, b)) => (m, Some(b)),
                    None => (args, None),
                };
                let probs = matrix.split(';').map(numbers).collect::<Result<Vec<_>>>()?;
                match breaks {
                    Some(b) => Kernel::block(probs, numbers(b)?),
                    None => Kernel::equal_blocks(probs),
                }
            }
            "product" => {
                let (a, b) = pair(args)?;
                Kernel::product(a, b)
            }
            "logistic" => {
                let (c, sc) = pair(args)?;
                Kernel::logistic(c, sc)
            }
            other => Err(Error::Kernel(format!("unknown kernel kind `{other}`"))),
        }
    }
}
