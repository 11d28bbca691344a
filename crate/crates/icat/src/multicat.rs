//! The free-category monad on graphs, free-category multicategories, the
//! canonical structure on indiscrete graphs, the one-object multicategory
//! induced by a monoidal structure, and the two mutually inverse translations
//! between enriched categories and enriched generalized multicategories.
//!
//! Arrow carriers here are infinite, so structures are enumerated lazily up
//! to an explicit path-length bound. Tensor folds are left-nested over the
//! reversed list: an arrow list is stored in path order, and its first entry
//! is the rightmost tensor factor. Where a computation regroups such folds,
//! the canonical reassociation isomorphism is inserted explicitly, so
//! non-strict enriching structures are handled exactly.

use std::collections::BTreeMap;

use crate::ambient::{product, Atom, FiniteMap, FiniteSet};
use crate::enriched::EnrichedCategory;
use crate::error::Error;
use crate::monoidal::{MonoidalStructure, TensorTree};
use crate::report::{Axiom, CheckOptions, CheckReport};
use crate::Result;

/// A finite directed multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FGraph {
    pub name: String,
    pub vertices: FiniteSet,
    pub edges: FiniteSet,
    pub src: FiniteMap,
    pub tgt: FiniteMap,
}

impl FGraph {
    pub fn new(
        name: impl Into<String>,
        vertices: FiniteSet,
        edges: FiniteSet,
        src: FiniteMap,
        tgt: FiniteMap,
    ) -> Result<FGraph> {
        if *src.dom() != edges
            || *src.cod() != vertices
            || *tgt.dom() != edges
            || *tgt.cod() != vertices
        {
            return Err(Error::MalformedData(
                "graph source and target must be maps edges -> vertices".into(),
            ));
        }
        Ok(FGraph {
            name: name.into(),
            vertices,
            edges,
            src,
            tgt,
        })
    }
}

/// A path in a graph: a start vertex and a possibly empty list of
/// consecutive edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub start: Atom,
    pub edges: Vec<Atom>,
}

impl Path {
    pub fn empty(v: &Atom) -> Path {
        Path {
            start: v.clone(),
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self, g: &FGraph) -> Atom {
        match self.edges.last() {
            None => self.start.clone(),
            Some(e) => g.tgt.apply(e).clone(),
        }
    }

    pub fn encode(&self) -> Atom {
        Atom::pair(&self.start, &Atom::list(&self.edges))
    }

    pub fn decode(a: &Atom) -> Option<Path> {
        let (start, rest) = a.unpair()?;
        Some(Path {
            start,
            edges: rest.unlist()?,
        })
    }
}

/// All paths of length at most `bound`, in canonical order of their
/// encodings. Complete and duplicate-free up to the bound.
pub fn enumerate_paths(g: &FGraph, bound: usize) -> Vec<Path> {
    let mut by_end: Vec<(Path, Atom)> = g
        .vertices
        .iter()
        .map(|v| (Path::empty(v), v.clone()))
        .collect();
    let mut all: Vec<Path> = by_end.iter().map(|(p, _)| p.clone()).collect();
    for _ in 0..bound {
        let mut next = Vec::new();
        for (p, end) in &by_end {
            for e in g.edges.iter() {
                if g.src.apply(e) == end {
                    let mut q = p.clone();
                    q.edges.push(e.clone());
                    let qend = g.tgt.apply(e).clone();
                    all.push(q.clone());
                    next.push((q, qend));
                }
            }
        }
        by_end = next;
    }
    all.sort_by(|a, b| a.encode().cmp(&b.encode()));
    all
}

/// The free category on a graph, enumerable up to a path-length bound:
/// arrows are paths, composition is concatenation, identities are empty
/// paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazyCategory {
    pub graph: FGraph,
    pub bound: usize,
}

impl LazyCategory {
    pub fn objects(&self) -> &FiniteSet {
        &self.graph.vertices
    }

    pub fn arrows(&self) -> Vec<Path> {
        enumerate_paths(&self.graph, self.bound)
    }

    pub fn id(&self, v: &Atom) -> Path {
        Path::empty(v)
    }

    /// `g` after `f`: concatenation, respecting the bound.
    pub fn compose(&self, g: &Path, f: &Path) -> Result<Path> {
        if f.end(&self.graph) != g.start {
            return Err(Error::DomainMismatch("paths are not composable".into()));
        }
        let len = f.len() + g.len();
        if len > self.bound {
            return Err(Error::BoundExceeded {
                bound: self.bound,
                len,
            });
        }
        let mut edges = f.edges.clone();
        edges.extend(g.edges.iter().cloned());
        Ok(Path {
            start: f.start.clone(),
            edges,
        })
    }
}

pub fn free_category(g: &FGraph, bound: usize) -> LazyCategory {
    LazyCategory {
        graph: g.clone(),
        bound,
    }
}

/// The graph of the free category: vertices unchanged, edges are the paths
/// up to the bound.
pub fn fc_graph(g: &FGraph, bound: usize) -> FGraph {
    let paths = enumerate_paths(g, bound);
    let edges = FiniteSet::new(
        format!("FC({})₁", g.name),
        paths.iter().map(Path::encode).collect(),
    );
    let src = FiniteMap::from_fn(&edges, &g.vertices, |a| Path::decode(a).unwrap().start);
    let tgt = FiniteMap::from_fn(&edges, &g.vertices, |a| Path::decode(a).unwrap().end(g));
    FGraph::new(format!("FC({})", g.name), g.vertices.clone(), edges, src, tgt).unwrap()
}

/// Flattens a path of paths.
fn flatten_path_of_paths(outer_start: &Atom, inner: &[Path]) -> Path {
    let mut edges = Vec::new();
    for p in inner {
        edges.extend(p.edges.iter().cloned());
    }
    let start = inner
        .first()
        .map(|p| p.start.clone())
        .unwrap_or_else(|| outer_start.clone());
    Path { start, edges }
}

/// Checks the monad laws for the free-category construction: the unit laws
/// for both unit insertions, and agreement of nested flattenings within the
/// bound.
pub fn fc_monad_laws(g: &FGraph, bound: usize, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(format!("FC({})", g.name));
    let paths = enumerate_paths(g, bound);

    // Flattening a singleton list of paths returns the path.
    let mut unit_outer = Axiom::new("flatten-after-unit", opts);
    for p in &paths {
        let flat = flatten_path_of_paths(&p.start, std::slice::from_ref(p));
        if flat != *p {
            unit_outer.fail(&[&p.encode()]);
        }
    }
    report.push(unit_outer);

    // Flattening the list of single-edge paths returns the path.
    let mut unit_inner = Axiom::new("flatten-after-edgewise-unit", opts);
    for p in &paths {
        let singletons: Vec<Path> = p
            .edges
            .iter()
            .map(|e| Path {
                start: g.src.apply(e).clone(),
                edges: vec![e.clone()],
            })
            .collect();
        let flat = flatten_path_of_paths(&p.start, &singletons);
        if flat != *p {
            unit_inner.fail(&[&p.encode()]);
        }
    }
    report.push(unit_inner);

    // Both ways of flattening a path of paths of paths agree.
    let mut assoc = Axiom::new("flatten-associativity", opts);
    for (start, outer) in nested_paths(g, bound) {
        let flattened_inner: Vec<Path> = outer
            .iter()
            .map(|(s, ps)| flatten_path_of_paths(s, ps))
            .collect();
        let outer_first = flatten_path_of_paths(&start, &flattened_inner);
        let all_inner: Vec<Path> = outer.iter().flat_map(|(_, ps)| ps.clone()).collect();
        let inner_first = flatten_path_of_paths(&start, &all_inner);
        if outer_first != inner_first {
            assoc.fail_note(&[&start], "nested flattening mismatch");
        }
    }
    report.push(assoc);

    report
}

/// All doubly nested path structures with total length within the bound:
/// a start vertex and, for each middle path, its own decomposition.
#[allow(clippy::type_complexity)]
fn nested_paths(g: &FGraph, bound: usize) -> Vec<(Atom, Vec<(Atom, Vec<Path>)>)> {
    let paths = enumerate_paths(g, bound);
    let mut out = Vec::new();
    for (start, middle) in composable_lists(g, &paths, bound) {
        let decomps_per_slot: Vec<Vec<Vec<Path>>> =
            middle.iter().map(|p| decompositions(g, p)).collect();
        for combo in cartesian(&decomps_per_slot) {
            let entry: Vec<(Atom, Vec<Path>)> = middle
                .iter()
                .zip(combo.iter())
                .map(|(p, d)| (p.start.clone(), (*d).clone()))
                .collect();
            out.push((start.clone(), entry));
        }
    }
    out
}

/// Lists of consecutive paths with bounded total length, tagged with their
/// start vertex. Lists of up to `bound` segments suffice to exercise the
/// laws.
fn composable_lists(g: &FGraph, paths: &[Path], bound: usize) -> Vec<(Atom, Vec<Path>)> {
    let mut out: Vec<(Atom, Vec<Path>)> = g
        .vertices
        .iter()
        .map(|v| (v.clone(), Vec::new()))
        .collect();
    let mut frontier: Vec<(Atom, Atom, usize, Vec<Path>)> = g
        .vertices
        .iter()
        .map(|v| (v.clone(), v.clone(), 0usize, Vec::new()))
        .collect();
    for _ in 0..bound {
        let mut next = Vec::new();
        for (start, end, used, list) in &frontier {
            for p in paths {
                if p.start == *end && used + p.len() <= bound {
                    let mut extended = list.clone();
                    extended.push(p.clone());
                    out.push((start.clone(), extended.clone()));
                    next.push((start.clone(), p.end(g), used + p.len(), extended));
                }
            }
        }
        frontier = next;
    }
    out
}

/// All ways to split a path into a list of consecutive subpaths. The empty
/// path has two decompositions: no segments, or one empty segment.
fn decompositions(g: &FGraph, p: &Path) -> Vec<Vec<Path>> {
    if p.is_empty() {
        return vec![vec![], vec![Path::empty(&p.start)]];
    }
    let n = p.len();
    let mut out = Vec::new();
    for mask in 0..(1u32 << (n - 1)) {
        let mut segments = Vec::new();
        let mut current = Path::empty(&p.start);
        for (i, e) in p.edges.iter().enumerate() {
            current.edges.push(e.clone());
            let cut = i + 1 == n || mask & (1 << i) != 0;
            if cut {
                let next_start = g.tgt.apply(e).clone();
                segments.push(std::mem::replace(&mut current, Path::empty(&next_start)));
            }
        }
        out.push(segments);
    }
    out
}

fn cartesian<'a, T>(slots: &'a [Vec<T>]) -> Vec<Vec<&'a T>> {
    let mut out: Vec<Vec<&T>> = vec![Vec::new()];
    for slot in slots {
        let mut next = Vec::new();
        for prefix in &out {
            for item in slot {
                let mut row = prefix.clone();
                row.push(item);
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// A free-category multicategory, represented lazily. Arrows are encoded
/// atoms; their domains are paths in the object graph and their codomains
/// are its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcMulticategory {
    pub name: String,
    kind: McKind,
    /// Redirected multicomposition results, keyed by the configuration
    /// `⟨outer,(inners)⟩`. Empty for honest structures; used by the shipped
    /// mutation fixtures.
    mcomp_overrides: BTreeMap<Atom, Atom>,
    /// Redirected identity assignments, keyed by object-graph edge.
    mids_overrides: BTreeMap<Atom, Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum McKind {
    /// The canonical structure on the indiscrete graph of a carrier: arrows
    /// are vertex sequences and multicomposition flattens.
    IndX { carrier: FiniteSet },
    /// The one-object structure induced by a monoidal category: arrows are
    /// pairs of an object list and an arrow out of its tensor fold.
    MonVal { v: MonoidalStructure },
}

/// The canonical multicategory structure on the indiscrete graph of a
/// carrier.
pub fn ind_multicat(carrier: &FiniteSet) -> FcMulticategory {
    FcMulticategory {
        name: format!("Ind^{}", carrier.name()),
        kind: McKind::IndX {
            carrier: carrier.clone(),
        },
        mcomp_overrides: BTreeMap::new(),
        mids_overrides: BTreeMap::new(),
    }
}

/// The one-object multicategory induced by a monoidal structure.
pub fn build_mv(v: &MonoidalStructure) -> FcMulticategory {
    FcMulticategory {
        name: format!("M_{}", v.name),
        kind: McKind::MonVal { v: v.clone() },
        mcomp_overrides: BTreeMap::new(),
        mids_overrides: BTreeMap::new(),
    }
}

fn config_key(outer: &Atom, inners: &[Atom]) -> Atom {
    Atom::pair(outer, &Atom::list(inners))
}

impl FcMulticategory {
    pub fn with_mcomp_override(mut self, outer: &Atom, inners: &[Atom], result: Atom) -> Self {
        self.mcomp_overrides
            .insert(config_key(outer, inners), result);
        self.name = format!("{}-mutant", self.name);
        self
    }

    pub fn with_mids_override(mut self, edge: &Atom, result: Atom) -> Self {
        self.mids_overrides.insert(edge.clone(), result);
        self.name = format!("{}-mutant", self.name);
        self
    }

    /// The enriching structure, for the one-object kind.
    pub fn monoidal(&self) -> Option<&MonoidalStructure> {
        match &self.kind {
            McKind::MonVal { v } => Some(v),
            McKind::IndX { .. } => None,
        }
    }

    /// The carrier, for the indiscrete kind.
    pub fn carrier(&self) -> Option<&FiniteSet> {
        match &self.kind {
            McKind::IndX { carrier } => Some(carrier),
            McKind::MonVal { .. } => None,
        }
    }

    /// The object graph.
    pub fn obj_graph(&self) -> FGraph {
        match &self.kind {
            McKind::IndX { carrier } => {
                let edges = product(carrier, carrier).apex;
                let src = FiniteMap::from_fn(&edges, carrier, |p| p.unpair().unwrap().0);
                let tgt = FiniteMap::from_fn(&edges, carrier, |p| p.unpair().unwrap().1);
                FGraph::new(
                    format!("Ind({})", carrier.name()),
                    carrier.clone(),
                    edges,
                    src,
                    tgt,
                )
                .unwrap()
            }
            McKind::MonVal { v } => {
                let one = crate::ambient::terminal();
                let edges = v.base.obj.clone();
                let src = FiniteMap::constant(&edges, &one, &crate::ambient::star());
                let tgt = src.clone();
                FGraph::new(format!("{}₀", self.name), one, edges, src, tgt).unwrap()
            }
        }
    }

    /// The arrow graph up to the bound: one vertex set shared with the
    /// object graph's source data, and the enumerated arrows as edges.
    pub fn arrow_graph(&self, bound: usize) -> FGraph {
        let g = self.obj_graph();
        let arrows = FiniteSet::new(format!("{}₁", self.name), self.arrows(bound));
        let src = FiniteMap::from_fn(&arrows, &g.vertices, |a| self.dom(a).unwrap().start);
        let tgt = FiniteMap::from_fn(&arrows, &g.vertices, |a| {
            let cod = self.cod(a).unwrap();
            g.tgt.apply(&cod).clone()
        });
        FGraph::new(format!("{}₁", self.name), g.vertices, arrows, src, tgt).unwrap()
    }

    /// Enumerates arrows whose domain path has at most `bound` edges, in
    /// canonical order.
    pub fn arrows(&self, bound: usize) -> Vec<Atom> {
        let mut out = Vec::new();
        match &self.kind {
            McKind::IndX { carrier } => {
                let mut seqs: Vec<Vec<Atom>> = carrier.iter().map(|x| vec![x.clone()]).collect();
                for s in &seqs {
                    out.push(Atom::list(s));
                }
                for _ in 0..bound {
                    let mut next = Vec::new();
                    for s in &seqs {
                        for x in carrier.iter() {
                            let mut t = s.clone();
                            t.push(x.clone());
                            out.push(Atom::list(&t));
                            next.push(t);
                        }
                    }
                    seqs = next;
                }
            }
            McKind::MonVal { v } => {
                let mut lists: Vec<Vec<Atom>> = vec![Vec::new()];
                for len in 0..=bound {
                    if len > 0 {
                        let mut next = Vec::new();
                        for l in &lists {
                            for o in v.base.obj.iter() {
                                let mut m = l.clone();
                                m.push(o.clone());
                                next.push(m);
                            }
                        }
                        lists = next;
                    }
                    for l in &lists {
                        let source = v.fold_objects(l);
                        for f in v.base.arr.iter() {
                            if v.src_of(f) == &source {
                                out.push(Atom::pair(&Atom::list(l), f));
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The domain of an arrow: a path in the object graph.
    pub fn dom(&self, arrow: &Atom) -> Result<Path> {
        match &self.kind {
            McKind::IndX { .. } => {
                let seq = arrow
                    .unlist()
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| Error::InvalidMulticatData(format!("bad arrow {arrow}")))?;
                let edges = seq.windows(2).map(|w| Atom::pair(&w[0], &w[1])).collect();
                Ok(Path {
                    start: seq[0].clone(),
                    edges,
                })
            }
            McKind::MonVal { .. } => {
                let (list, _) = arrow
                    .unpair()
                    .ok_or_else(|| Error::InvalidMulticatData(format!("bad arrow {arrow}")))?;
                let edges = list
                    .unlist()
                    .ok_or_else(|| Error::InvalidMulticatData(format!("bad arrow {arrow}")))?;
                Ok(Path {
                    start: crate::ambient::star(),
                    edges,
                })
            }
        }
    }

    /// The codomain of an arrow: an edge of the object graph.
    pub fn cod(&self, arrow: &Atom) -> Result<Atom> {
        match &self.kind {
            McKind::IndX { .. } => {
                let seq = arrow
                    .unlist()
                    .filter(|s| !s.is_empty())
                    .ok_or_else(|| Error::InvalidMulticatData(format!("bad arrow {arrow}")))?;
                Ok(Atom::pair(&seq[0], &seq[seq.len() - 1]))
            }
            McKind::MonVal { v } => {
                let (_, f) = arrow
                    .unpair()
                    .ok_or_else(|| Error::InvalidMulticatData(format!("bad arrow {arrow}")))?;
                Ok(v.tgt_of(&f).clone())
            }
        }
    }

    /// The identity arrow on an object-graph edge.
    pub fn mid(&self, edge: &Atom) -> Atom {
        if let Some(redirected) = self.mids_overrides.get(edge) {
            return redirected.clone();
        }
        match &self.kind {
            McKind::IndX { .. } => {
                let (x, y) = edge.unpair().unwrap();
                Atom::list(&[x, y])
            }
            McKind::MonVal { v } => {
                Atom::pair(&Atom::list(std::slice::from_ref(edge)), &v.id_arr(edge))
            }
        }
    }

    /// Multicomposition: substitutes one inner arrow per edge of the outer
    /// arrow's domain.
    pub fn mcomp(&self, outer: &Atom, inners: &[Atom]) -> Result<Atom> {
        let dom = self.dom(outer)?;
        if dom.len() != inners.len() {
            return Err(Error::InvalidMulticatData(format!(
                "composition needs {} inner arrows, got {}",
                dom.len(),
                inners.len()
            )));
        }
        for (slot, inner) in dom.edges.iter().zip(inners.iter()) {
            if self.cod(inner)? != *slot {
                return Err(Error::InvalidMulticatData(format!(
                    "inner arrow {inner} does not land on {slot}"
                )));
            }
        }
        if let Some(redirected) = self.mcomp_overrides.get(&config_key(outer, inners)) {
            return Ok(redirected.clone());
        }
        match &self.kind {
            McKind::IndX { .. } => {
                if inners.is_empty() {
                    return Ok(outer.clone());
                }
                let mut seq: Vec<Atom> = Vec::new();
                for (i, inner) in inners.iter().enumerate() {
                    let s = inner.unlist().unwrap();
                    if i == 0 {
                        seq.extend(s);
                    } else {
                        seq.extend(s.into_iter().skip(1));
                    }
                }
                Ok(Atom::list(&seq))
            }
            McKind::MonVal { v } => {
                if inners.is_empty() {
                    return Ok(outer.clone());
                }
                let (_, f) = outer.unpair().unwrap();
                let parts: Vec<(Vec<Atom>, Atom)> = inners
                    .iter()
                    .map(|a| {
                        let (l, g) = a.unpair().unwrap();
                        (l.unlist().unwrap(), g)
                    })
                    .collect();
                // Tensor the inner arrows in display order (reversed storage
                // order), left-nested.
                let mut display = parts.iter().rev();
                let first = display.next().unwrap();
                let mut tensored = first.1.clone();
                for p in display {
                    tensored = v.tensor_arr(&tensored, &p.1);
                }
                // Reassociate the flat fold of the concatenated list onto the
                // blockwise fold the tensored arrow starts from.
                let blocks: Vec<TensorTree> = parts
                    .iter()
                    .rev()
                    .map(|(l, _)| {
                        if l.is_empty() {
                            TensorTree::Unit
                        } else {
                            let word: Vec<Atom> = l.iter().rev().cloned().collect();
                            TensorTree::leaf_word(&word)
                        }
                    })
                    .collect();
                let block_tree = TensorTree::left_nested(blocks);
                let to_flat = v.normalize_tree(&block_tree)?;
                let from_flat = v.inverse_of(&to_flat)?;
                let corrected = v.compose(&tensored, &from_flat)?;
                let total = v.compose(&f, &corrected)?;
                let concat: Vec<Atom> = parts.iter().flat_map(|(l, _)| l.clone()).collect();
                Ok(Atom::pair(&Atom::list(&concat), &total))
            }
        }
    }

    /// Arrows grouped by codomain edge, for composition enumeration.
    fn arrows_by_cod(&self, bound: usize) -> BTreeMap<Atom, Vec<Atom>> {
        let mut map: BTreeMap<Atom, Vec<Atom>> = BTreeMap::new();
        for a in self.arrows(bound) {
            map.entry(self.cod(&a).unwrap()).or_default().push(a);
        }
        map
    }
}

/// Lists of inner arrows matching the required codomain edges, with the
/// total domain length within the budget.
fn fillings(
    required: &[Atom],
    budget: usize,
    by_cod: &BTreeMap<Atom, Vec<Atom>>,
    dom_len: &BTreeMap<Atom, usize>,
) -> Vec<Vec<Atom>> {
    match required.split_first() {
        None => vec![Vec::new()],
        Some((edge, rest)) => {
            let mut out = Vec::new();
            if let Some(candidates) = by_cod.get(edge) {
                for c in candidates {
                    let used = *dom_len.get(c).unwrap_or(&usize::MAX);
                    if used > budget {
                        continue;
                    }
                    for mut tail in fillings(rest, budget - used, by_cod, dom_len) {
                        tail.insert(0, c.clone());
                        out.push(tail);
                    }
                }
            }
            out
        }
    }
}

/// Domain path lengths of a batch of arrows, precomputed for enumeration.
fn dom_lengths(m: &FcMulticategory, arrows: &[Atom]) -> BTreeMap<Atom, usize> {
    arrows
        .iter()
        .map(|a| (a.clone(), m.dom(a).map(|p| p.len()).unwrap_or(usize::MAX)))
        .collect()
}

/// Checks identity typing, the unit laws, and associativity of
/// multicomposition on all configurations within the bound.
pub fn check_fc_multicat(m: &FcMulticategory, bound: usize, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&m.name);
    let g = m.obj_graph();
    let arrows = m.arrows(bound);
    let by_cod = m.arrows_by_cod(bound);

    let mut mids_typing = Axiom::new("identity-typing", opts);
    for e in g.edges.iter() {
        let id = m.mid(e);
        let ok = match (m.dom(&id), m.cod(&id)) {
            (Ok(p), Ok(c)) => p.edges == vec![e.clone()] && c == *e,
            _ => false,
        };
        if !ok {
            mids_typing.fail(&[e, &id]);
        }
    }
    report.push(mids_typing);

    let mut units = Axiom::new("units", opts);
    for a in &arrows {
        let cod = m.cod(a).unwrap();
        let outer_id = m.mid(&cod);
        match m.mcomp(&outer_id, std::slice::from_ref(a)) {
            Ok(r) if r == *a => {}
            _ => units.fail_note(&[a], "outer identity"),
        }
        let dom = m.dom(a).unwrap();
        let inner_ids: Vec<Atom> = dom.edges.iter().map(|e| m.mid(e)).collect();
        match m.mcomp(a, &inner_ids) {
            Ok(r) if r == *a => {}
            _ => units.fail_note(&[a], "inner identities"),
        }
    }
    report.push(units);

    let mut assoc = Axiom::new("associativity", opts);
    let dom_len = dom_lengths(m, &arrows);
    let mut memo: BTreeMap<Atom, Result<Atom>> = BTreeMap::new();
    let mut mcomp_memo = |m: &FcMulticategory, outer: &Atom, inners: &[Atom]| {
        memo.entry(config_key(outer, inners))
            .or_insert_with(|| m.mcomp(outer, inners))
            .clone()
    };
    // Filling lists recur across configurations; key them by the required
    // codomain edges.
    let mut fill_memo: BTreeMap<Atom, Vec<Vec<Atom>>> = BTreeMap::new();
    let mut fillings_memo = |required: &[Atom]| {
        fill_memo
            .entry(Atom::list(required))
            .or_insert_with(|| fillings(required, bound, &by_cod, &dom_len))
            .clone()
    };
    for a in &arrows {
        let dom_a = m.dom(a).unwrap();
        for middle in fillings_memo(&dom_a.edges) {
            let first = mcomp_memo(m, a, &middle);
            let slots: Vec<Vec<Vec<Atom>>> = middle
                .iter()
                .map(|p| fillings_memo(&m.dom(p).unwrap().edges))
                .collect();
            for combo in cartesian(&slots) {
                let total: usize = combo
                    .iter()
                    .flat_map(|fill| fill.iter())
                    .map(|x| dom_len[x])
                    .sum();
                if total > bound {
                    continue;
                }
                let flat: Vec<Atom> = combo
                    .iter()
                    .flat_map(|fill| fill.iter().cloned())
                    .collect();
                let lhs = first
                    .clone()
                    .and_then(|first| mcomp_memo(m, &first, &flat));
                let rhs_inner: Result<Vec<Atom>> = middle
                    .iter()
                    .zip(combo.iter())
                    .map(|(p, fill)| mcomp_memo(m, p, fill))
                    .collect();
                let rhs = rhs_inner.and_then(|inner| mcomp_memo(m, a, &inner));
                match (lhs, rhs) {
                    (Ok(x), Ok(y)) if x == y => {}
                    _ => {
                        let middle_atom = Atom::list(&middle);
                        let flat_atom = Atom::list(&flat);
                        assoc.fail(&[a, &middle_atom, &flat_atom]);
                    }
                }
            }
        }
    }
    report.push(assoc);

    report
}

/// A map of free-category multicategories from the canonical indiscrete
/// structure into a one-object monoidal structure, tabulated up to a bound.
/// This is exactly the shape of an enriched generalized multicategory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticatMap {
    pub name: String,
    pub source: FcMulticategory,
    pub target: FcMulticategory,
    pub bound: usize,
    /// Object-graph vertex component.
    pub vertex0: FiniteMap,
    /// Object-graph edge component; for an enriched category this is the
    /// hom table.
    pub edge0: FiniteMap,
    /// Arrow component on all source arrows within the bound.
    pub arrow1: BTreeMap<Atom, Atom>,
}

impl MulticatMap {
    pub fn arrow_image(&self, arrow: &Atom) -> Result<&Atom> {
        self.arrow1.get(arrow).ok_or_else(|| {
            Error::InvalidMulticatData(format!("arrow {arrow} is outside the tabulated bound"))
        })
    }
}

/// The enriched-category-to-multicategory translation: vertices map to the
/// point, edges map through the hom table, and a path maps to the iterated
/// composition along it.
pub fn to_multicat(x: &EnrichedCategory, bound: usize) -> Result<MulticatMap> {
    let v = &x.v;
    let source = ind_multicat(&x.carrier);
    let target = build_mv(v);
    let sg = source.obj_graph();
    let tg = target.obj_graph();
    let vertex0 = FiniteMap::constant(&sg.vertices, &tg.vertices, &crate::ambient::star());
    let edge0 = x.hom.clone();

    let mut arrow1 = BTreeMap::new();
    for arrow in source.arrows(bound) {
        let seq = arrow.unlist().unwrap();
        let homs: Vec<Atom> = seq.windows(2).map(|w| x.hom_at(&w[0], &w[1])).collect();
        let composite = iterated_composition(x, &seq)?;
        arrow1.insert(arrow, Atom::pair(&Atom::list(&homs), &composite));
    }
    Ok(MulticatMap {
        name: format!("M({})", x.name),
        source,
        target,
        bound,
        vertex0,
        edge0,
        arrow1,
    })
}

/// The iterated composition arrow along a vertex sequence:
/// `hom(x_{n-1},x_n) ⊗ … ⊗ hom(x_0,x_1) → hom(x_0,x_n)`. Peeling the first
/// path edge at each step keeps the fold left-nested, so no associator is
/// needed here; associators enter through multicomposition instead.
fn iterated_composition(x: &EnrichedCategory, seq: &[Atom]) -> Result<Atom> {
    let v = &x.v;
    match seq.len() {
        0 => Err(Error::InvalidMulticatData("empty vertex sequence".into())),
        1 => Ok(x.ident_at(&seq[0])),
        2 => Ok(v.id_arr(&x.hom_at(&seq[0], &seq[1]))),
        _ => {
            let rest = iterated_composition(x, &seq[1..])?;
            let first_hom = x.hom_at(&seq[0], &seq[1]);
            let last = &seq[seq.len() - 1];
            let step = v.tensor_arr(&rest, &v.id_arr(&first_hom));
            v.compose(&x.comp_at(&seq[0], &seq[1], last), &step)
        }
    }
}

/// The commuting-prism condition alone: every arrow image must have the
/// mapped domain path and codomain edge.
fn prism_axiom(m: &MulticatMap, opts: &CheckOptions) -> Axiom {
    let mut prism = Axiom::new("graph-map-compatibility", opts);
    for a in &m.source.arrows(m.bound) {
        let image = match m.arrow_image(a) {
            Ok(i) => i,
            Err(_) => {
                prism.fail_note(&[a], "no image");
                continue;
            }
        };
        let sdom = m.source.dom(a).unwrap();
        let ok = match (m.target.dom(image), m.target.cod(image)) {
            (Ok(tdom), Ok(tcod)) => {
                let mapped: Vec<Atom> = sdom
                    .edges
                    .iter()
                    .map(|e| m.edge0.apply(e).clone())
                    .collect();
                let cod_matches = m.edge0.apply(&m.source.cod(a).unwrap()) == &tcod;
                tdom.edges == mapped && cod_matches
            }
            _ => false,
        };
        if !ok {
            prism.fail(&[a, image]);
        }
    }
    prism
}

/// Checks that a multicategory map commutes with domains, codomains,
/// identities and multicomposition up to its bound.
pub fn check_multicat_map(m: &MulticatMap, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&m.name);
    let arrows = m.source.arrows(m.bound);
    report.push(prism_axiom(m, opts));

    let mut ids = Axiom::new("identity-preservation", opts);
    let sg = m.source.obj_graph();
    for e in sg.edges.iter() {
        let lhs = m.arrow_image(&m.source.mid(e)).cloned();
        let rhs = m.target.mid(m.edge0.apply(e));
        match lhs {
            Ok(l) if l == rhs => {}
            _ => ids.fail(&[e]),
        }
    }
    report.push(ids);

    let mut comp = Axiom::new("composition-preservation", opts);
    let by_cod = m.source.arrows_by_cod(m.bound);
    let dom_len = dom_lengths(&m.source, &arrows);
    for a in &arrows {
        let dom_a = m.source.dom(a).unwrap();
        for inner in fillings(&dom_a.edges, m.bound, &by_cod, &dom_len) {
            let composed = match m.source.mcomp(a, &inner) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if m.source.dom(&composed).map(|p| p.len() > m.bound).unwrap_or(true) {
                continue;
            }
            let lhs = m.arrow_image(&composed).cloned();
            let inner_images: Result<Vec<Atom>> =
                inner.iter().map(|i| m.arrow_image(i).cloned()).collect();
            let rhs = m
                .arrow_image(a)
                .cloned()
                .and_then(|outer| inner_images.and_then(|imgs| m.target.mcomp(&outer, &imgs)));
            match (lhs, rhs) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => comp.fail(&[a, &Atom::list(&inner)]),
            }
        }
    }
    report.push(comp);

    report
}

/// The multicategory-to-enriched-category translation: reads hom from the
/// edge component, identities from the image of empty paths, and composition
/// from the image of two-step paths.
pub fn from_multicat(m: &MulticatMap) -> Result<EnrichedCategory> {
    let carrier = m
        .source
        .carrier()
        .ok_or_else(|| Error::InvalidMulticatData("source is not an indiscrete structure".into()))?
        .clone();
    let v = m
        .target
        .monoidal()
        .ok_or_else(|| {
            Error::InvalidMulticatData("target is not a one-object monoidal structure".into())
        })?
        .clone();
    if m.bound < 2 {
        return Err(Error::InvalidMulticatData(
            "need bound at least 2 to read off composition".into(),
        ));
    }
    // The prism has to commute before the readoff makes sense.
    let prism = prism_axiom(m, &CheckOptions::default()).finish();
    if !prism.passed() {
        return Err(Error::InvalidMulticatData(format!(
            "graph-map compatibility fails, first witness {:?}",
            prism.witnesses.first()
        )));
    }

    let hom = m.edge0.clone();
    let arrow_part = |a: &Atom| -> Result<Atom> { Ok(m.arrow_image(a)?.unpair().unwrap().1) };
    let mut ident_table = BTreeMap::new();
    for x0 in carrier.iter() {
        ident_table.insert(
            x0.clone(),
            arrow_part(&Atom::list(std::slice::from_ref(x0)))?,
        );
    }
    let ident = FiniteMap::new(carrier.clone(), v.base.arr.clone(), ident_table)?;
    let triples = crate::monoidal::triple_apex(&carrier);
    let mut comp_table = BTreeMap::new();
    for t in triples.iter() {
        let (x0, x1, x2) = t.untriple().unwrap();
        comp_table.insert(t.clone(), arrow_part(&Atom::list(&[x0, x1, x2]))?);
    }
    let comp = FiniteMap::new(triples, v.base.arr.clone(), comp_table)?;
    EnrichedCategory::new(format!("E({})", m.name), v, carrier, hom, comp, ident)
}

/// Converts an enriched functor to multicategory-map form and back, checking
/// the functor axiom along every path within the bound and that the
/// round-trip reproduces the components exactly.
pub fn multicat_functor_roundtrip(
    f: &crate::enriched::EnrichedFunctor,
    bound: usize,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(&f.name);
    let mx = to_multicat(&f.dom, bound)?;
    let my = to_multicat(&f.cod, bound)?;
    let mv = &my.target;

    // Arrow component of the induced multicategory functor on single edges.
    let edge_image = |x0: &Atom, x1: &Atom| -> Atom {
        Atom::pair(
            &Atom::list(std::slice::from_ref(&f.dom.hom_at(x0, x1))),
            &f.arr_at(x0, x1),
        )
    };

    let mut axiom = Axiom::new("functor-axiom", opts);
    for arrow in mx.source.arrows(bound) {
        let seq = arrow.unlist().unwrap();
        let image_seq: Vec<Atom> = seq.iter().map(|s| f.obj_at(s).clone()).collect();
        let (lhs, rhs) = if seq.len() == 1 {
            // Empty path: its image must compose with the endpoint component
            // to the codomain's identity datum.
            let x = &seq[0];
            let lhs = mv.mcomp(
                &edge_image(x, x),
                std::slice::from_ref(mx.arrow_image(&arrow).unwrap()),
            );
            let rhs = my.arrow_image(&Atom::list(&image_seq)).cloned();
            (lhs, rhs)
        } else {
            let (x0, xn) = (&seq[0], &seq[seq.len() - 1]);
            let lhs = mv.mcomp(
                &edge_image(x0, xn),
                std::slice::from_ref(mx.arrow_image(&arrow).unwrap()),
            );
            let edge_images: Vec<Atom> =
                seq.windows(2).map(|w| edge_image(&w[0], &w[1])).collect();
            let rhs = my
                .arrow_image(&Atom::list(&image_seq))
                .cloned()
                .and_then(|outer| mv.mcomp(&outer, &edge_images));
            (lhs, rhs)
        };
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => axiom.fail(&[&arrow]),
        }
    }
    report.push(axiom);

    // Read the functor back off the multicategory-level data and compare the
    // endpoint categories after their own round trips.
    let mut roundtrip = Axiom::new("roundtrip-identity", opts);
    for p in f.f1.dom().iter() {
        let (x0, x1) = p.unpair().unwrap();
        let (list, arrow) = edge_image(&x0, &x1).unpair().unwrap();
        let lists_match = list.unlist().unwrap() == vec![f.dom.hom_at(&x0, &x1)];
        if !lists_match || arrow != f.arr_at(&x0, &x1) {
            roundtrip.fail(&[&x0, &x1]);
        }
    }
    let x_back = from_multicat(&mx)?;
    let y_back = from_multicat(&my)?;
    if x_back != f.dom {
        roundtrip.fail_note(&[&Atom::sym("dom")], "domain category changed");
    }
    if y_back != f.cod {
        roundtrip.fail_note(&[&Atom::sym("cod")], "codomain category changed");
    }
    report.push(roundtrip);

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn sym(s: &str) -> Atom {
        Atom::sym(s)
    }

    fn loop_graph() -> FGraph {
        let v = FiniteSet::new("V", vec![sym("v")]);
        let e = FiniteSet::new("E", vec![sym("l")]);
        let src = FiniteMap::constant(&e, &v, &sym("v"));
        FGraph::new("loop", v, e.clone(), src.clone(), src).unwrap()
    }

    fn edge_graph() -> FGraph {
        let v = FiniteSet::new("V", vec![sym("a"), sym("b")]);
        let e = FiniteSet::new("E", vec![sym("f")]);
        let src = FiniteMap::constant(&e, &v, &sym("a"));
        let tgt = FiniteMap::constant(&e, &v, &sym("b"));
        FGraph::new("edge", v, e, src, tgt).unwrap()
    }

    #[test]
    fn free_category_path_counts() {
        // One loop: lengths 0..3.
        assert_eq!(free_category(&loop_graph(), 3).arrows().len(), 4);
        // No edges: one empty path per vertex.
        let verts = FiniteSet::new("V", vec![sym("a"), sym("b")]);
        let empty = FiniteSet::empty("E");
        let nomap = FiniteMap::new(empty.clone(), verts.clone(), BTreeMap::new()).unwrap();
        let discrete = FGraph::new("disc", verts, empty, nomap.clone(), nomap).unwrap();
        assert_eq!(free_category(&discrete, 4).arrows().len(), 2);
        // Single edge between two vertices: two empty paths and the edge.
        assert_eq!(free_category(&edge_graph(), 5).arrows().len(), 3);
    }

    #[test]
    fn composition_respects_bound() {
        let fc = free_category(&loop_graph(), 3);
        let arrows = fc.arrows();
        let two = arrows.iter().find(|p| p.len() == 2).unwrap();
        let composed = fc.compose(two, two);
        assert!(matches!(
            composed,
            Err(Error::BoundExceeded { bound: 3, len: 4 })
        ));
        let one = arrows.iter().find(|p| p.len() == 1).unwrap();
        assert_eq!(fc.compose(two, one).unwrap().len(), 3);
        let id = fc.id(&sym("v"));
        assert_eq!(fc.compose(&id, two).unwrap(), *two);
    }

    #[test]
    fn monad_laws_hold_on_small_graphs() {
        for g in [loop_graph(), edge_graph()] {
            let report = fc_monad_laws(&g, 3, &opts());
            assert!(report.passed(), "{}: {:?}", g.name, report.failed_axioms());
        }
    }

    #[test]
    fn ind_multicat_flattens_and_passes() {
        let carrier = FiniteSet::new("X", vec![sym("x")]);
        let m = ind_multicat(&carrier);
        // Arrows of the one-vertex structure are lists (x, …, x).
        assert_eq!(m.arrows(3).len(), 4);
        let outer = Atom::list(&[sym("x"), sym("x"), sym("x")]);
        let inner = vec![
            Atom::list(&[sym("x"), sym("x")]),
            Atom::list(&[sym("x"), sym("x"), sym("x")]),
        ];
        let composed = m.mcomp(&outer, &inner).unwrap();
        assert_eq!(
            composed,
            Atom::list(&[sym("x"), sym("x"), sym("x"), sym("x")])
        );
        let report = check_fc_multicat(&m, 3, &opts());
        assert!(report.passed(), "{:?}", report.failed_axioms());

        let empty = ind_multicat(&FiniteSet::empty("∅"));
        assert!(empty.arrows(3).is_empty());
        assert!(check_fc_multicat(&empty, 3, &opts()).passed());
    }

    #[test]
    fn ind_multicat_unit_insertion() {
        let carrier = FiniteSet::new("X", vec![sym("x0"), sym("x1")]);
        let m = ind_multicat(&carrier);
        let pair = Atom::list(&[sym("x0"), sym("x1")]);
        let composed = m.mcomp(&pair, std::slice::from_ref(&pair)).unwrap();
        assert_eq!(composed, pair);
        assert!(check_fc_multicat(&m, 2, &opts()).passed());
    }

    #[test]
    fn mv_arrows_and_identities() {
        let v = corpus::v_bool();
        let m = build_mv(&v);
        let id1 = m.mid(&sym("1"));
        assert_eq!(id1, Atom::pair(&Atom::list(&[sym("1")]), &sym("i1")));
        // Unit arrows compose to themselves.
        let list11 = Atom::list(&[sym("1"), sym("1")]);
        let a = Atom::pair(&list11, &sym("i1"));
        let ids = vec![m.mid(&sym("1")), m.mid(&sym("1"))];
        assert_eq!(m.mcomp(&a, &ids).unwrap(), a);
        let report = check_fc_multicat(&m, 3, &opts());
        assert!(report.passed(), "{:?}", report.failed_axioms());
    }

    #[test]
    fn mv_passes_for_nonstrict_structures() {
        for v in [corpus::v_z2(), corpus::v_sign(), corpus::v_tw(), corpus::v_twu()] {
            let m = build_mv(&v);
            let report = check_fc_multicat(&m, 3, &opts());
            assert!(report.passed(), "{}: {:?}", v.name, report.failed_axioms());
        }
    }

    #[test]
    fn mv_associativity_spot_check_over_z2() {
        // Three stacked lists over the delooped group: folding the group
        // products in either order agrees.
        let v = corpus::v_z2();
        let m = build_mv(&v);
        let dotl = |n: usize| Atom::list(&vec![corpus::z2_obj(); n]);
        let arrow = |n: usize, s: &str| Atom::pair(&dotl(n), &sym(s));
        let a = arrow(2, "s");
        let middle = vec![arrow(1, "s"), arrow(2, "e")];
        let bottom = vec![arrow(1, "e"), arrow(1, "s"), arrow(0, "s")];
        let lhs = m.mcomp(&m.mcomp(&a, &middle).unwrap(), &bottom).unwrap();
        let rhs_inner = vec![
            m.mcomp(&middle[0], &bottom[..1]).unwrap(),
            m.mcomp(&middle[1], &bottom[1..]).unwrap(),
        ];
        let rhs = m.mcomp(&a, &rhs_inner).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn flatten_drop_mutant_fails_exactly_associativity() {
        let m = corpus::ind_assoc_mutant();
        let report = check_fc_multicat(&m, 3, &opts());
        assert_eq!(report.failed_axioms(), vec!["associativity"]);
    }

    #[test]
    fn mids_mutant_fails_exactly_units() {
        let m = corpus::mv_units_mutant();
        let report = check_fc_multicat(&m, 3, &opts());
        assert_eq!(report.failed_axioms(), vec!["units"]);
    }

    #[test]
    fn to_multicat_images_match_the_stated_shapes() {
        let x = corpus::preorder_chain3();
        let m = to_multicat(&x, 3).unwrap();
        // Empty path: identity element datum.
        let p = Atom::list(&[sym("p")]);
        assert_eq!(
            m.arrow1[&p],
            Atom::pair(&Atom::list(&[]), &x.ident_at(&sym("p")))
        );
        // Single edge: identity on the hom object.
        let pq = Atom::list(&[sym("p"), sym("q")]);
        let h = x.hom_at(&sym("p"), &sym("q"));
        assert_eq!(
            m.arrow1[&pq],
            Atom::pair(&Atom::list(std::slice::from_ref(&h)), &x.v.id_arr(&h))
        );
        // Two edges: the composition arrow with the stored hom list.
        let pqr = Atom::list(&[sym("p"), sym("q"), sym("r")]);
        let expect_list = Atom::list(&[
            x.hom_at(&sym("p"), &sym("q")),
            x.hom_at(&sym("q"), &sym("r")),
        ]);
        let (list, arrow) = m.arrow1[&pqr].unpair().unwrap();
        assert_eq!(list, expect_list);
        assert_eq!(arrow, x.comp_at(&sym("p"), &sym("q"), &sym("r")));
    }

    #[test]
    fn to_multicat_is_a_multicat_map_for_all_corpus_instances() {
        for x in corpus::enriched_corpus() {
            let m = to_multicat(&x, 3).unwrap();
            let report = check_multicat_map(&m, &opts());
            assert!(report.passed(), "{}: {:?}", x.name, report.failed_axioms());
        }
    }

    #[test]
    fn roundtrip_is_identity_on_the_corpus() {
        for x in corpus::enriched_corpus() {
            let m = to_multicat(&x, 3).unwrap();
            let back = from_multicat(&m).unwrap();
            assert_eq!(back, x, "{}", x.name);
        }
    }

    #[test]
    fn from_multicat_rejects_broken_prisms() {
        let x = corpus::x_z2();
        let mut m = to_multicat(&x, 3).unwrap();
        // Redirect one image onto an arrow with the wrong domain list.
        let key = Atom::list(&[sym("a"), sym("b")]);
        m.arrow1
            .insert(key, Atom::pair(&Atom::list(&[]), &corpus::z2_e()));
        assert!(matches!(
            from_multicat(&m),
            Err(Error::InvalidMulticatData(_))
        ));
    }

    #[test]
    fn functor_roundtrips_pass() {
        for f in [
            corpus::chain3_collapse_functor(),
            corpus::x_z2_swap_functor(),
            corpus::x_twu_swap_functor(),
            crate::enriched::identity_enriched_functor(&corpus::x_tw()),
        ] {
            let report = multicat_functor_roundtrip(&f, 3, &opts()).unwrap();
            assert!(report.passed(), "{}: {:?}", f.name, report.failed_axioms());
        }
    }

    #[test]
    fn mutated_functor_component_fails_the_functor_axiom() {
        let good = corpus::x_z2_swap_functor();
        let mut f1 = good.f1.table().clone();
        f1.insert(Atom::pair(&sym("a"), &sym("b")), corpus::z2_e());
        let bad = crate::enriched::EnrichedFunctor::new(
            "mutated",
            good.dom.clone(),
            good.cod.clone(),
            good.f0.clone(),
            FiniteMap::new(good.f1.dom().clone(), good.f1.cod().clone(), f1).unwrap(),
        )
        .unwrap();
        let report = multicat_functor_roundtrip(&bad, 3, &opts()).unwrap();
        assert!(!report.axiom("functor-axiom").unwrap().passed());
        let witness = &report.axiom("functor-axiom").unwrap().witnesses[0];
        assert!(witness.contains('a'), "{witness}");
    }
}
