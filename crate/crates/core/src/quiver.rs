//! Quivers, dimension vectors, the dimension bookkeeping of the framed
//! representation space, and the JSON quiver spec file.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motivic::LRat;

/// A finite quiver with vertices `0..vertex_count`. Loops and parallel
/// arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Spec("a quiver needs at least one vertex".into()));
        }
        for (k, &(s, t)) in arrows.iter().enumerate() {
            if s >= vertex_count || t >= vertex_count {
                return Err(Error::Spec(format!(
                    "edges[{k}]: arrow ({s},{t}) has an endpoint outside 0..{vertex_count}"
                )));
            }
        }
        Ok(Self { vertex_count, arrows })
    }

    /// One vertex with one loop.
    pub fn jordan() -> Self {
        Self::new(1, vec![(0, 0)]).expect("valid")
    }

    /// One vertex, no arrows.
    pub fn single_vertex() -> Self {
        Self::new(1, vec![]).expect("valid")
    }

    /// `0 -> 1`.
    pub fn a2() -> Self {
        Self::new(2, vec![(0, 1)]).expect("valid")
    }

    /// Two parallel arrows `0 -> 1`.
    pub fn kronecker() -> Self {
        Self::new(2, vec![(0, 1), (0, 1)]).expect("valid")
    }

    /// Center `0` with arrows from the leaves `1` and `2`.
    pub fn star3() -> Self {
        Self::new(3, vec![(1, 0), (2, 0)]).expect("valid")
    }

    /// One vertex with two loops.
    pub fn two_loop() -> Self {
        Self::new(1, vec![(0, 0), (0, 0)]).expect("valid")
    }

    /// Looks up a built-in quiver by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "jordan" => Some(Self::jordan()),
            "single" | "a1" | "point" => Some(Self::single_vertex()),
            "a2" => Some(Self::a2()),
            "kronecker" | "double-arrow" => Some(Self::kronecker()),
            "star3" | "star" => Some(Self::star3()),
            "two-loop" | "2-loop" => Some(Self::two_loop()),
            _ => None,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Disjoint union, with the vertices of `other` shifted past ours.
    pub fn disjoint_union(&self, other: &Quiver) -> Quiver {
        let n = self.vertex_count;
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().map(|&(s, t)| (s + n, t + n)));
        Quiver {
            vertex_count: n + other.vertex_count,
            arrows,
        }
    }

    pub fn check(&self, v: &DimVector) -> Result<()> {
        if v.len() != self.vertex_count {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count,
                got: v.len(),
            });
        }
        Ok(())
    }
}

/// Nonnegative integer vector indexed by the quiver vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u32>> for DimVector {
    fn from(v: Vec<u32>) -> Self {
        DimVector(v)
    }
}

/// `dim V_{v,w} = Σ_e v_{s(e)} v_{t(e)} + Σ_i w_i v_i`.
pub fn dim_rep_space(q: &Quiver, v: &DimVector, w: &DimVector) -> Result<u64> {
    q.check(v)?;
    q.check(w)?;
    let arrows: u64 = q
        .arrows
        .iter()
        .map(|&(s, t)| u64::from(v[s]) * u64::from(v[t]))
        .sum();
    let framing: u64 = v.0.iter().zip(&w.0).map(|(&a, &b)| u64::from(a) * u64::from(b)).sum();
    Ok(arrows + framing)
}

/// `dim g_v = Σ_i v_i^2`.
pub fn dim_group(v: &DimVector) -> u64 {
    v.0.iter().map(|&x| u64::from(x) * u64::from(x)).sum()
}

/// `d_{v,w} = dim g_v - dim V_{v,w}`; negative whenever the variety has
/// positive dimension.
pub fn d_shift(q: &Quiver, v: &DimVector, w: &DimVector) -> Result<i64> {
    Ok(dim_group(v) as i64 - dim_rep_space(q, v, w)? as i64)
}

/// `[G_v] = Π_i [GL_{v_i}]`.
pub fn group_class(v: &DimVector) -> LRat {
    v.0.iter()
        .fold(LRat::one(), |acc, &n| &acc * &LRat::gl_class(n))
}

/// Parsed contents of a quiver spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverSpec {
    pub quiver: Quiver,
    pub w: Option<DimVector>,
    pub v: Option<DimVector>,
    pub max_degree: Option<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    vertices: i64,
    edges: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_degree: Option<i64>,
}

fn nonnegative(field: &str, x: i64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::Spec(format!("{field}: expected a nonnegative integer, got {x}")))
}

fn vector(field: &str, entries: Option<Vec<i64>>, n: usize) -> Result<Option<DimVector>> {
    let Some(entries) = entries else {
        return Ok(None);
    };
    if entries.len() != n {
        return Err(Error::Spec(format!(
            "{field}: has {} entries, quiver has {n} vertices",
            entries.len()
        )));
    }
    let parsed = entries
        .iter()
        .enumerate()
        .map(|(i, &x)| nonnegative(&format!("{field}[{i}]"), x))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(DimVector(parsed)))
}

/// Parses a quiver spec document:
///
/// ```json
/// { "vertices": 2, "edges": [[0, 1]], "w": [1, 0], "v": [1, 1], "max_degree": 3 }
/// ```
///
/// Only `vertices` and `edges` are required; unknown fields are rejected.
pub fn parse_quiver(text: &str) -> Result<QuiverSpec> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
    let n = usize::try_from(raw.vertices)
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Spec(format!("vertices: expected a positive integer, got {}", raw.vertices)))?;
    let mut arrows = Vec::with_capacity(raw.edges.len());
    for (k, edge) in raw.edges.iter().enumerate() {
        let [s, t] = edge.as_slice() else {
            return Err(Error::Spec(format!(
                "edges[{k}]: expected a [source, target] pair, got {} entries",
                edge.len()
            )));
        };
        for (name, x) in [("source", *s), ("target", *t)] {
            if x < 0 || x as u64 >= n as u64 {
                return Err(Error::Spec(format!(
                    "edges[{k}]: {name} {x} out of range for {n} vertices"
                )));
            }
        }
        arrows.push((*s as usize, *t as usize));
    }
    let quiver = Quiver::new(n, arrows)?;
    Ok(QuiverSpec {
        w: vector("w", raw.w, n)?,
        v: vector("v", raw.v, n)?,
        max_degree: raw.max_degree.map(|d| nonnegative("max_degree", d)).transpose()?,
        quiver,
    })
}

/// Renders a spec in the format read by [`parse_quiver`].
pub fn serialize_quiver(spec: &QuiverSpec) -> String {
    let to_i64 = |v: &DimVector| v.0.iter().map(|&x| i64::from(x)).collect::<Vec<_>>();
    let raw = RawSpec {
        vertices: spec.quiver.vertex_count as i64,
        edges: spec
            .quiver
            .arrows
            .iter()
            .map(|&(s, t)| vec![s as i64, t as i64])
            .collect(),
        w: spec.w.as_ref().map(to_i64),
        v: spec.v.as_ref().map(to_i64),
        max_degree: spec.max_degree.map(i64::from),
    };
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dv(x: &[u32]) -> DimVector {
        DimVector(x.to_vec())
    }

    #[test]
    fn rep_space_dimensions() {
        let j = Quiver::jordan();
        let s = Quiver::single_vertex();
        assert_eq!(dim_rep_space(&j, &dv(&[1]), &dv(&[1])).unwrap(), 2);
        assert_eq!(dim_rep_space(&s, &dv(&[1]), &dv(&[2])).unwrap(), 2);
        assert_eq!(dim_rep_space(&j, &dv(&[2]), &dv(&[1])).unwrap(), 6);
        assert_eq!(
            dim_rep_space(&j, &dv(&[1, 1]), &dv(&[1])),
            Err(Error::LengthMismatch { expected: 1, got: 2 })
        );
    }

    #[test]
    fn group_dimensions() {
        assert_eq!(dim_group(&dv(&[1])), 1);
        assert_eq!(dim_group(&dv(&[2, 1])), 5);
        assert_eq!(dim_group(&dv(&[0])), 0);
    }

    #[test]
    fn shifts() {
        assert_eq!(d_shift(&Quiver::jordan(), &dv(&[1]), &dv(&[1])).unwrap(), -1);
        assert_eq!(d_shift(&Quiver::single_vertex(), &dv(&[1]), &dv(&[2])).unwrap(), -1);
        for q in [Quiver::jordan(), Quiver::two_loop()] {
            for w in 0..4 {
                assert_eq!(d_shift(&q, &dv(&[0]), &dv(&[w])).unwrap(), 0);
            }
        }
        for w in [[0, 0, 0], [2, 1, 0], [1, 1, 1]] {
            assert_eq!(d_shift(&Quiver::star3(), &DimVector::zeros(3), &dv(&w)).unwrap(), 0);
        }
    }

    #[test]
    fn group_classes() {
        let lm1 = &LRat::l() - &LRat::one();
        assert_eq!(group_class(&dv(&[1])), lm1);
        assert_eq!(group_class(&dv(&[1, 1])), &lm1 * &lm1);
        assert_eq!(group_class(&dv(&[2])), LRat::gl_class(2));
    }

    #[test]
    fn parse_examples() {
        let j = parse_quiver(r#"{"vertices": 1, "edges": [[0, 0]]}"#).unwrap();
        assert_eq!(j.quiver, Quiver::jordan());
        assert_eq!(j.w, None);
        let a2 = parse_quiver(r#"{"vertices": 2, "edges": [[0,1]], "w": [1,0], "max_degree": 3}"#).unwrap();
        assert_eq!(a2.quiver, Quiver::a2());
        assert_eq!(a2.w, Some(dv(&[1, 0])));
        assert_eq!(a2.max_degree, Some(3));
    }

    #[test]
    fn parse_errors_name_the_field() {
        let err = |t: &str| match parse_quiver(t) {
            Err(Error::Spec(m)) => m,
            other => panic!("expected spec error, got {other:?}"),
        };
        assert!(err(r#"{"vertices": 2, "edges": [[0,5]]}"#).contains("edges[0]: target 5"));
        assert!(err(r#"{"vertices": 1, "edges": [], "w": [-1]}"#).contains("w[0]"));
        assert!(err(r#"{"vertices": 1, "edges": [], "colour": 3}"#).contains("unknown field"));
        assert!(err("{\"vertices\": 1,\n \"edges\": [[0,0]\n").contains("line"));
        assert!(err(r#"{"vertices": 2, "edges": [], "v": [1]}"#).contains("v: has 1 entries"));
        assert!(err(r#"{"vertices": 0, "edges": []}"#).contains("vertices"));
        assert!(err(r#"{"vertices": 1, "edges": [[0]]}"#).contains("edges[0]"));
    }

    #[test]
    fn dimension_additive_under_disjoint_union() {
        let corpus = [Quiver::jordan(), Quiver::a2(), Quiver::kronecker(), Quiver::star3()];
        for a in &corpus {
            for b in &corpus {
                let u = a.disjoint_union(b);
                let va = DimVector((0..a.vertex_count() as u32).map(|i| i + 1).collect());
                let wa = DimVector(vec![2; a.vertex_count()]);
                let vb = DimVector(vec![3; b.vertex_count()]);
                let wb = DimVector((0..b.vertex_count() as u32).collect());
                assert_eq!(
                    dim_rep_space(&u, &va.concat(&vb), &wa.concat(&wb)).unwrap(),
                    dim_rep_space(a, &va, &wa).unwrap() + dim_rep_space(b, &vb, &wb).unwrap()
                );
            }
        }
    }

    fn spec_strategy() -> impl Strategy<Value = QuiverSpec> {
        (1usize..5).prop_flat_map(|n| {
            (
                prop::collection::vec((0..n, 0..n), 0..6),
                prop::option::of(prop::collection::vec(0u32..5, n)),
                prop::option::of(prop::collection::vec(0u32..5, n)),
                prop::option::of(0u32..9),
            )
                .prop_map(move |(arrows, w, v, max_degree)| QuiverSpec {
                    quiver: Quiver::new(n, arrows).unwrap(),
                    w: w.map(DimVector),
                    v: v.map(DimVector),
                    max_degree,
                })
        })
    }

    proptest! {
        #[test]
        fn parse_serialize_roundtrip(spec in spec_strategy()) {
            prop_assert_eq!(parse_quiver(&serialize_quiver(&spec)).unwrap(), spec);
        }
    }
}
