use alloc::vec::Vec;

use super::{ker, minimal::check_strict_subsets};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::independence::inner_edge;
use crate::set::VertexSet;

/// The bipartite gadget built on an independent set `X`: the `X`–`N(X)`
/// edges of the host, plus two new vertices `v`, `w` with `v` joined to `w`
/// and to all of `N(X)`.
///
/// Gadget labels: `X` occupies `0..|X|`, `N(X)` the next `|N(X)|` labels,
/// then `v` and finally `w`.
#[derive(Clone, Debug)]
pub struct HxGadget {
    pub host: Graph,
    pub x: VertexSet,
    pub gadget: Graph,
    pub v_label: usize,
    pub w_label: usize,
    /// `embedding[i]` is the host vertex behind gadget vertex `i`, for every
    /// gadget vertex other than `v` and `w`.
    pub embedding: Vec<usize>,
}

impl HxGadget {
    pub fn gadget_vertex(&self, host_vertex: usize) -> Option<usize> {
        self.embedding.iter().position(|&h| h == host_vertex)
    }

    /// `X` in gadget labels.
    pub fn embedded_x(&self) -> VertexSet {
        VertexSet::from_members(self.gadget.order(), 0..self.x.len())
    }

    /// `N(X)` in gadget labels.
    pub fn embedded_neighborhood(&self) -> VertexSet {
        VertexSet::from_members(self.gadget.order(), self.x.len()..self.v_label)
    }

    /// Maps a gadget vertex set back to host vertices, dropping `v` and `w`.
    pub fn to_host(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_members(
            self.host.order(),
            s.iter().filter(|&i| i < self.v_label).map(|i| self.embedding[i]),
        )
    }
}

pub fn build_hx(g: &Graph, x: &VertexSet) -> Result<HxGadget> {
    let x = g.adopt(x)?.into_owned();
    if let Some((a, b)) = inner_edge(g, &x) {
        return Err(Error::NotIndependent(a, b));
    }
    let nx = g.neighborhood(&x)?;
    let embedding: Vec<usize> = x.iter().chain(nx.iter()).collect();
    let mut label = alloc::vec![usize::MAX; g.order()];
    for (i, &h) in embedding.iter().enumerate() {
        label[h] = i;
    }
    let v_label = embedding.len();
    let w_label = v_label + 1;
    let mut edges = Vec::new();
    for a in x.iter() {
        for &b in g.neighbors(a) {
            edges.push((label[a], label[b]));
        }
    }
    edges.push((v_label, w_label));
    edges.extend(nx.iter().map(|b| (v_label, label[b])));
    let gadget = Graph::new(w_label + 1, edges)?;
    Ok(HxGadget {
        host: g.clone(),
        x,
        gadget,
        v_label,
        w_label,
        embedding,
    })
}

/// For `x` independent with `d(x) > 0` and every proper subset strictly
/// below `d(x)`: whether `ker(H_X)` is exactly the embedded `x`.
pub fn verify_hx_ker(g: &Graph, x: &VertexSet) -> Result<bool> {
    check_strict_subsets(g, x)?;
    let hx = build_hx(g, x)?;
    Ok(ker(&hx.gadget) == hx.embedded_x())
}
