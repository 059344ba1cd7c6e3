use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::hitting::schedule::exchange_size;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `T = {v} ∪ N(v)` for a minimum-degree vertex `v`.
    LowDegree,
    /// `alpha > n/2`: `T` is a single vertex common to all maximum independent sets.
    Kernel,
    /// `T = H ∪ N(H) ∪ S_j` from the anchor-sample construction.
    BetConstruction,
    /// `T` is a uniformly random `p`-subset that happened to hit everything.
    Sampling,
    /// `T = V`, only when explicitly allowed for infeasible parameters.
    Fallback,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::LowDegree => "low-degree",
            Mode::Kernel => "kernel",
            Mode::BetConstruction => "bet-construction",
            Mode::Sampling => "sampling",
            Mode::Fallback => "fallback",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "low-degree" => Mode::LowDegree,
            "kernel" => Mode::Kernel,
            "bet-construction" => Mode::BetConstruction,
            "sampling" => Mode::Sampling,
            "fallback" => Mode::Fallback,
            other => return Err(Error::InvalidArgument(format!("unknown certificate mode `{other}`"))),
        })
    }
}

/// Full trace of one construction run.
///
/// Set-valued fields not used by a mode are empty. The record format written by
/// [`HittingCertificate::to_record`] is line-oriented `key: value`, with vertex sets as
/// ascending space-separated ids, and round-trips through [`HittingCertificate::from_record`].
#[derive(Clone, Debug, PartialEq)]
pub struct HittingCertificate {
    pub mode: Mode,
    pub n: usize,
    /// Forbidden pattern `(s, t)`, when the run was parameterised by one.
    pub pattern: Option<(usize, usize)>,
    pub delta: Option<f64>,
    pub seed: u64,
    pub alpha: Option<usize>,
    /// Minimum-degree vertex (low-degree mode) or kernel vertex (kernel mode).
    pub pivot: Option<usize>,
    /// 1-based index of the selected degree bin and its `[lo, hi)` range.
    pub bin_index: Option<usize>,
    pub bin_range: Option<(f64, f64)>,
    /// Anchor sample size.
    pub k: Option<usize>,
    /// `I`: the maximum independent set the construction works inside.
    pub independent_set: VertexSet,
    /// `S_j`: vertices outside `I` whose degree into `I` falls in the selected bin.
    pub bin_members: VertexSet,
    /// `I_j`: the sampled anchors.
    pub anchors: VertexSet,
    /// `K`: union of the common neighbourhoods of all `s`-subsets of anchors.
    pub common_neighborhood: VertexSet,
    /// `H`: exchange set inside `I` with the fewest residual neighbours.
    pub exchange: VertexSet,
    /// `N(H)`: neighbours of `H` in the residual set `V \ (I ∪ K ∪ S_j)`.
    pub exchange_neighbors: VertexSet,
    /// `T`: the hitting set.
    pub hitting_set: VertexSet,
    /// `e = |E(I, V \ (I ∪ K ∪ S_j))|`.
    pub residual_edges: Option<usize>,
}

impl HittingCertificate {
    pub(crate) fn bare(mode: Mode, n: usize, hitting_set: VertexSet) -> Self {
        let empty = VertexSet::new(n);
        Self {
            mode,
            n,
            pattern: None,
            delta: None,
            seed: 0,
            alpha: None,
            pivot: None,
            bin_index: None,
            bin_range: None,
            k: None,
            independent_set: empty.clone(),
            bin_members: empty.clone(),
            anchors: empty.clone(),
            common_neighborhood: empty.clone(),
            exchange: empty.clone(),
            exchange_neighbors: empty,
            hitting_set,
            residual_edges: None,
        }
    }

    /// `(|H|, |N(H)|, |S_j|)`.
    pub fn size_accounting(&self) -> (usize, usize, usize) {
        (self.exchange.len(), self.exchange_neighbors.len(), self.bin_members.len())
    }

    /// Residual set `V \ (I ∪ K ∪ S_j)`.
    pub fn residual(&self) -> VertexSet {
        let mut r = VertexSet::full(self.n);
        r.subtract(&self.independent_set);
        r.subtract(&self.common_neighborhood);
        r.subtract(&self.bin_members);
        r
    }

    /// Re-derives every structural claim of the certificate from `g`. Does not check
    /// that `T` hits all maximum independent sets; that is the verifier's job.
    pub fn check_consistency(&self, g: &Graph) -> std::result::Result<(), String> {
        if g.n() != self.n {
            return Err(format!("certificate is for n = {}, graph has n = {}", self.n, g.n()));
        }
        let t = &self.hitting_set;
        match self.mode {
            Mode::LowDegree => {
                let v = self.pivot.ok_or("low-degree certificate without pivot")?;
                let mut expected = g.neighbors(v).clone();
                expected.insert(v);
                ensure(*t == expected, "T != {v} ∪ N(v)")?;
                let (_, min_deg) = g.min_degree_vertex().ok_or("empty graph")?;
                ensure(g.degree(v) == min_deg, "pivot is not of minimum degree")?;
            }
            Mode::Kernel => {
                let v = self.pivot.ok_or("kernel certificate without pivot")?;
                ensure(t.len() == 1 && t.contains(v), "T != {v}")?;
                let alpha = self.alpha.ok_or("kernel certificate without alpha")?;
                ensure(2 * alpha > self.n, "kernel route needs alpha > n/2")?;
            }
            Mode::Fallback => ensure(t.len() == self.n, "fallback T != V")?,
            Mode::Sampling => {}
            Mode::BetConstruction => self.check_construction(g)?,
        }
        Ok(())
    }

    fn check_construction(&self, g: &Graph) -> std::result::Result<(), String> {
        let (s, t) = self.pattern.ok_or("missing pattern")?;
        let k = self.k.ok_or("missing k")?;
        let alpha = self.alpha.ok_or("missing alpha")?;
        let i = &self.independent_set;
        ensure(g.is_independent(i) && i.len() == alpha, "I is not an independent set of size alpha")?;
        ensure(self.anchors.is_subset(i) && self.anchors.len() == k, "I_j is not a k-subset of I")?;
        ensure(self.exchange.is_subset(i), "H not inside I")?;
        ensure(self.common_neighborhood.is_disjoint(i), "K meets I")?;
        ensure(self.bin_members.is_disjoint(i), "S_j meets I")?;
        ensure(Some(self.exchange.len()) == exchange_size(s, t, k), "|H| != (t-1) C(k,s) + 1")?;
        let (lo, hi) = self.bin_range.ok_or("missing bin range")?;
        let outside = i.complement();
        let expected_bin = VertexSet::from_vertices(
            self.n,
            outside.iter().filter(|&v| {
                let d = g.degree_into(v, i) as f64;
                lo <= d && d < hi
            }),
        );
        ensure(expected_bin == self.bin_members, "S_j does not match the bin range")?;
        let residual = self.residual();
        let mut nh = VertexSet::new(self.n);
        for h in &self.exchange {
            nh.union_with(&g.neighbors(h).intersection(&residual));
        }
        ensure(nh == self.exchange_neighbors, "N(H) mismatch")?;
        let expected_t = self.exchange.union(&self.exchange_neighbors).union(&self.bin_members);
        ensure(expected_t == self.hitting_set, "T != H ∪ N(H) ∪ S_j")?;
        ensure(self.residual_edges == Some(g.edges_between(i, &residual)), "e mismatch")?;
        Ok(())
    }

    pub fn to_record(&self) -> String {
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        fn line(out: &mut String, key: &str, value: impl fmt::Display) {
            let value = value.to_string();
            if value.is_empty() {
                writeln!(out, "{key}:").unwrap();
            } else {
                writeln!(out, "{key}: {value}").unwrap();
            }
        }
        let mut out = String::from("# hitlab certificate v1\n");
        line(&mut out, "mode", self.mode);
        line(&mut out, "n", self.n);
        line(&mut out, "s", opt(&self.pattern.map(|p| p.0)));
        line(&mut out, "t", opt(&self.pattern.map(|p| p.1)));
        line(&mut out, "delta", opt(&self.delta));
        line(&mut out, "seed", self.seed);
        line(&mut out, "alpha", opt(&self.alpha));
        line(&mut out, "pivot", opt(&self.pivot));
        line(&mut out, "bin", opt(&self.bin_index));
        line(&mut out, "bin_range", self.bin_range.map(|(lo, hi)| format!("{lo} {hi}")).unwrap_or_default());
        line(&mut out, "k", opt(&self.k));
        line(&mut out, "I", &self.independent_set);
        line(&mut out, "S_j", &self.bin_members);
        line(&mut out, "I_j", &self.anchors);
        line(&mut out, "K", &self.common_neighborhood);
        line(&mut out, "H", &self.exchange);
        line(&mut out, "NH", &self.exchange_neighbors);
        line(&mut out, "T", &self.hitting_set);
        line(&mut out, "e", opt(&self.residual_edges));
        let (h, nh, sj) = self.size_accounting();
        line(&mut out, "sizes", format!("{h} {nh} {sj}"));
        out
    }

    pub fn from_record(text: &str) -> Result<Self> {
        let mut fields = std::collections::HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content.split_once(':').ok_or_else(|| Error::parse(idx + 1, "expected `key: value`"))?;
            fields.insert(key.trim().to_owned(), (idx + 1, value.trim().to_owned()));
        }
        let get = |key: &str| fields.get(key).map(|(l, v)| (*l, v.as_str()));
        let required = |key: &str| get(key).ok_or_else(|| Error::parse(0, format!("missing field `{key}`")));

        fn num<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
            v.parse().map_err(|_| Error::parse(line, format!("invalid {key} `{v}`")))
        }
        let optional = |key: &str| -> Option<(usize, &str)> { get(key).filter(|(_, v)| !v.is_empty()) };

        let (_, mode) = required("mode")?;
        let mode: Mode = mode.parse()?;
        let (nl, n) = required("n")?;
        let n: usize = num(nl, "n", n)?;
        let set = |key: &str| -> Result<VertexSet> {
            let Some((line, v)) = get(key) else { return Ok(VertexSet::new(n)) };
            let mut out = VertexSet::new(n);
            for tok in v.split_whitespace() {
                let id: usize = num(line, key, tok)?;
                if id >= n {
                    return Err(Error::VertexRange { line, vertex: id, n });
                }
                out.insert(id);
            }
            Ok(out)
        };
        let opt_usize = |key: &str| -> Result<Option<usize>> { optional(key).map(|(l, v)| num(l, key, v)).transpose() };

        let pattern = match (opt_usize("s")?, opt_usize("t")?) {
            (Some(s), Some(t)) => Some((s, t)),
            _ => None,
        };
        let delta = optional("delta").map(|(l, v)| num::<f64>(l, "delta", v)).transpose()?;
        let seed = optional("seed").map(|(l, v)| num::<u64>(l, "seed", v)).transpose()?.unwrap_or(0);
        let bin_range = optional("bin_range")
            .map(|(l, v)| {
                let mut parts = v.split_whitespace();
                let lo = num::<f64>(l, "bin_range", parts.next().unwrap_or(""))?;
                let hi = num::<f64>(l, "bin_range", parts.next().unwrap_or(""))?;
                Ok::<_, Error>((lo, hi))
            })
            .transpose()?;

        Ok(Self {
            mode,
            n,
            pattern,
            delta,
            seed,
            alpha: opt_usize("alpha")?,
            pivot: opt_usize("pivot")?,
            bin_index: opt_usize("bin")?,
            bin_range,
            k: opt_usize("k")?,
            independent_set: set("I")?,
            bin_members: set("S_j")?,
            anchors: set("I_j")?,
            common_neighborhood: set("K")?,
            exchange: set("H")?,
            exchange_neighbors: set("NH")?,
            hitting_set: set("T")?,
            residual_edges: opt_usize("e")?,
        })
    }
}

fn ensure(cond: bool, message: &str) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.to_owned())
    }
}
