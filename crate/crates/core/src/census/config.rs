use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigKind {
    Isolate,
    /// A center joined to `k` leaves, `k` in `1..=5`.
    Star(u8),
    Triangle,
    Cycle4,
    Cycle5,
}

/// One of the small pattern graphs whose counts make up a density profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SubgraphConfig {
    kind: ConfigKind,
    node_count: usize,
    edge_count: usize,
    aut_size: u64,
}

impl SubgraphConfig {
    pub fn new(kind: ConfigKind) -> Result<Self> {
        let (node_count, edge_count, aut_size) = match kind {
            ConfigKind::Isolate => (1, 0, 1),
            ConfigKind::Star(k @ 1..=5) => {
                let k = k as usize;
                let aut = if k == 1 { 2 } else { (1..=k as u64).product() };
                (k + 1, k, aut)
            }
            ConfigKind::Star(k) => {
                return Err(Error::invalid(format!("star order {k} outside 1..=5")))
            }
            ConfigKind::Triangle => (3, 3, 6),
            ConfigKind::Cycle4 => (4, 4, 8),
            ConfigKind::Cycle5 => (5, 5, 10),
        };
        Ok(SubgraphConfig {
            kind,
            node_count,
            edge_count,
            aut_size,
        })
    }

    pub const fn isolate() -> Self {
        SubgraphConfig {
            kind: ConfigKind::Isolate,
            node_count: 1,
            edge_count: 0,
            aut_size: 1,
        }
    }

    pub fn star(k: u8) -> Self {
        SubgraphConfig::new(ConfigKind::Star(k)).expect("star order in 1..=5")
    }

    pub const fn triangle() -> Self {
        SubgraphConfig {
            kind: ConfigKind::Triangle,
            node_count: 3,
            edge_count: 3,
            aut_size: 6,
        }
    }

    pub const fn cycle4() -> Self {
        SubgraphConfig {
            kind: ConfigKind::Cycle4,
            node_count: 4,
            edge_count: 4,
            aut_size: 8,
        }
    }

    pub const fn cycle5() -> Self {
        SubgraphConfig {
            kind: ConfigKind::Cycle5,
            node_count: 5,
            edge_count: 5,
            aut_size: 10,
        }
    }

    pub fn kind(&self) -> ConfigKind {
        self.kind
    }

    /// Number of vertices, `|F|`.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Size of the automorphism group.
    pub fn aut_size(&self) -> u64 {
        self.aut_size
    }

    pub fn name(&self) -> String {
        match self.kind {
            ConfigKind::Isolate => "isolate".into(),
            ConfigKind::Star(k) => format!("star{k}"),
            ConfigKind::Triangle => "triangle".into(),
            ConfigKind::Cycle4 => "cycle4".into(),
            ConfigKind::Cycle5 => "cycle5".into(),
        }
    }

    /// Edges of the pattern on vertices `0..node_count`. Stars have center 0.
    pub fn pattern_edges(&self) -> Vec<(usize, usize)> {
        match self.kind {
            ConfigKind::Isolate => Vec::new(),
            ConfigKind::Star(k) => (1..=k as usize).map(|leaf| (0, leaf)).collect(),
            ConfigKind::Triangle | ConfigKind::Cycle4 | ConfigKind::Cycle5 => {
                let n = self.node_count;
                (0..n).map(|v| (v, (v + 1) % n)).collect()
            }
        }
    }
}

impl fmt::Display for SubgraphConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for SubgraphConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let kind = match s.as_str() {
            "isolate" | "isolates" => ConfigKind::Isolate,
            "edge" => ConfigKind::Star(1),
            "triangle" => ConfigKind::Triangle,
            "cycle4" | "square" => ConfigKind::Cycle4,
            "cycle5" | "pentagon" => ConfigKind::Cycle5,
            other => match other.strip_prefix("star").and_then(|k| k.parse::<u8>().ok()) {
                Some(k) => ConfigKind::Star(k),
                None => return Err(Error::invalid(format!("unknown configuration `{s}`"))),
            },
        };
        SubgraphConfig::new(kind)
    }
}

impl TryFrom<String> for SubgraphConfig {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SubgraphConfig> for String {
    fn from(c: SubgraphConfig) -> String {
        c.name()
    }
}

/// The nine configurations used throughout: isolates, k-stars for
/// `k = 1..=5`, triangles, four-cycles and five-cycles, in that order.
pub fn default_configuration_set() -> Vec<SubgraphConfig> {
    let mut set = vec![SubgraphConfig::isolate()];
    set.extend((1..=5).map(SubgraphConfig::star));
    set.extend([
        SubgraphConfig::triangle(),
        SubgraphConfig::cycle4(),
        SubgraphConfig::cycle5(),
    ]);
    set
}

/// Parses a comma-separated configuration list such as `star1,triangle`.
pub fn parse_config_list(list: &str) -> Result<Vec<SubgraphConfig>> {
    let configs: Vec<_> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    if configs.is_empty() {
        return Err(Error::invalid("empty configuration list"));
    }
    Ok(configs)
}

/// Whether copies of a pattern must be induced.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// Vertex subsets whose edges contain a copy of the pattern; chords allowed.
    #[default]
    Copies,
    /// Vertex subsets whose induced graph is isomorphic to the pattern.
    Induced,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Copies => "copies",
            CountMode::Induced => "induced",
        })
    }
}

impl FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "copies" | "copy" => Ok(CountMode::Copies),
            "induced" => Ok(CountMode::Induced),
            other => Err(Error::invalid(format!("unknown count mode `{other}`"))),
        }
    }
}
