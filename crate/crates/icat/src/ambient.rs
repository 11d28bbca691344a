//! The ambient finitely complete category: finite sets and total functions,
//! with chosen products, pullbacks, equalizers and a terminal object.
//!
//! All values are immutable after construction and all operations are pure.
//! Chosen limits are computed deterministically from the canonical element
//! order, so repeated calls agree bit for bit.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::Result;

/// Element of a finite carrier.
///
/// An atom is a plain symbol, a structured pair `⟨a,b⟩`, or a tuple
/// `(a,b,...)`. Equality, ordering and hashing all go through the canonical
/// string encoding, which is what "canonical" means everywhere in this crate:
/// two structures are equal exactly when their encodings are.
///
/// Symbols may not contain `⟨ ⟩ ( ) ,` or whitespace, so the encoding is
/// injective and pairs/tuples can be decoded again.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn sym(s: impl Into<String>) -> Atom {
        let s = s.into();
        debug_assert!(Atom::is_valid_sym(&s), "invalid symbol atom {s:?}");
        Atom(s)
    }

    pub fn is_valid_sym(s: &str) -> bool {
        !s.is_empty()
            && !s
                .chars()
                .any(|c| "⟨⟩(),".contains(c) || c.is_whitespace() || c.is_control())
    }

    pub fn pair(a: &Atom, b: &Atom) -> Atom {
        Atom(format!("⟨{},{}⟩", a.0, b.0))
    }

    pub fn triple(a: &Atom, b: &Atom, c: &Atom) -> Atom {
        Atom::pair(&Atom::pair(a, b), c)
    }

    pub fn list(items: &[Atom]) -> Atom {
        let parts: Vec<&str> = items.iter().map(|a| a.0.as_str()).collect();
        Atom(format!("({})", parts.join(",")))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Decodes a pair atom.
    pub fn unpair(&self) -> Option<(Atom, Atom)> {
        let inner = self.0.strip_prefix('⟨')?.strip_suffix('⟩')?;
        let parts = split_top_level(inner)?;
        if parts.len() != 2 {
            return None;
        }
        Some((Atom(parts[0].to_string()), Atom(parts[1].to_string())))
    }

    pub fn untriple(&self) -> Option<(Atom, Atom, Atom)> {
        let (ab, c) = self.unpair()?;
        let (a, b) = ab.unpair()?;
        Some((a, b, c))
    }

    /// Decodes a tuple atom.
    pub fn unlist(&self) -> Option<Vec<Atom>> {
        let inner = self.0.strip_prefix('(')?.strip_suffix(')')?;
        if inner.is_empty() {
            return Some(Vec::new());
        }
        let parts = split_top_level(inner)?;
        Some(parts.into_iter().map(|p| Atom(p.to_string())).collect())
    }

    /// Accepts any canonically encoded atom; used by the parser after its own
    /// syntax validation.
    pub fn from_encoding(s: impl Into<String>) -> Atom {
        Atom(s.into())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Atom({})", self.0)
    }
}

/// Splits on commas not nested inside `⟨⟩` or `()`.
fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '⟨' | '(' => depth += 1,
            '⟩' | ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    Some(parts)
}

/// A named finite carrier with canonically ordered, pairwise distinct
/// elements.
///
/// The name is a label only: equality, ordering and hashing consider the
/// elements alone, so two sets with the same elements are interchangeable.
#[derive(Clone)]
pub struct FiniteSet {
    name: String,
    elements: Vec<Atom>,
}

impl FiniteSet {
    /// Builds a set, sorting elements into canonical order and removing
    /// duplicates.
    pub fn new(name: impl Into<String>, mut elements: Vec<Atom>) -> FiniteSet {
        elements.sort();
        elements.dedup();
        FiniteSet {
            name: name.into(),
            elements,
        }
    }

    pub fn empty(name: impl Into<String>) -> FiniteSet {
        FiniteSet::new(name, Vec::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> FiniteSet {
        FiniteSet {
            name: name.into(),
            elements: self.elements.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> + Clone {
        self.elements.iter()
    }

    pub fn elements(&self) -> &[Atom] {
        &self.elements
    }

    /// All ordered pairs of elements, for iteration in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Atom, &Atom)> + '_ {
        self.elements
            .iter()
            .flat_map(move |a| self.elements.iter().map(move |b| (a, b)))
    }

    /// All total maps from this set to `cod`, in canonical order.
    pub fn maps_to(&self, cod: &FiniteSet) -> Vec<FiniteMap> {
        let n = self.len();
        if n == 0 {
            return vec![FiniteMap::new(self.clone(), cod.clone(), BTreeMap::new()).unwrap()];
        }
        if cod.is_empty() {
            return Vec::new();
        }
        let m = cod.len();
        let total = m.checked_pow(n as u32).expect("map space too large");
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; n];
        loop {
            let table: BTreeMap<Atom, Atom> = self
                .elements
                .iter()
                .zip(idx.iter())
                .map(|(a, &i)| (a.clone(), cod.elements[i].clone()))
                .collect();
            out.push(FiniteMap::new(self.clone(), cod.clone(), table).unwrap());
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < m {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for FiniteSet {}
impl PartialOrd for FiniteSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FiniteSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements.cmp(&other.elements)
    }
}
impl std::hash::Hash for FiniteSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {{", self.name)?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A total function between finite sets, stored as an explicit table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteMap {
    dom: FiniteSet,
    cod: FiniteSet,
    table: BTreeMap<Atom, Atom>,
}

impl FiniteMap {
    /// Validates totality and codomain membership.
    pub fn new(dom: FiniteSet, cod: FiniteSet, table: BTreeMap<Atom, Atom>) -> Result<FiniteMap> {
        for a in dom.iter() {
            match table.get(a) {
                None => {
                    return Err(Error::MalformedData(format!(
                        "map table missing entry for {a} in domain {}",
                        dom.name()
                    )))
                }
                Some(b) if !cod.contains(b) => {
                    return Err(Error::MalformedData(format!(
                        "map sends {a} to {b}, which is not in codomain {}",
                        cod.name()
                    )))
                }
                _ => {}
            }
        }
        if table.len() != dom.len() {
            return Err(Error::MalformedData(format!(
                "map table has {} entries but domain {} has {} elements",
                table.len(),
                dom.name(),
                dom.len()
            )));
        }
        Ok(FiniteMap { dom, cod, table })
    }

    /// Builds a map from a rule applied to every domain element.
    pub fn from_fn(dom: &FiniteSet, cod: &FiniteSet, f: impl Fn(&Atom) -> Atom) -> FiniteMap {
        let table: BTreeMap<Atom, Atom> = dom.iter().map(|a| (a.clone(), f(a))).collect();
        FiniteMap::new(dom.clone(), cod.clone(), table)
            .expect("from_fn rule produced a value outside the codomain")
    }

    pub fn identity(s: &FiniteSet) -> FiniteMap {
        FiniteMap::from_fn(s, s, |a| a.clone())
    }

    pub fn constant(dom: &FiniteSet, cod: &FiniteSet, value: &Atom) -> FiniteMap {
        FiniteMap::from_fn(dom, cod, |_| value.clone())
    }

    pub fn dom(&self) -> &FiniteSet {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSet {
        &self.cod
    }

    pub fn table(&self) -> &BTreeMap<Atom, Atom> {
        &self.table
    }

    /// Looks up an element known to be in the domain.
    pub fn apply(&self, a: &Atom) -> &Atom {
        self.table
            .get(a)
            .unwrap_or_else(|| panic!("map applied outside its domain: {a}"))
    }

    pub fn get(&self, a: &Atom) -> Option<&Atom> {
        self.table.get(a)
    }

    /// Pipeline composition: `self` first, then `g`.
    pub fn then(&self, g: &FiniteMap) -> Result<FiniteMap> {
        if self.cod != g.dom {
            return Err(Error::DomainMismatch(format!(
                "cannot compose: codomain {} differs from domain {}",
                self.cod.name(),
                g.dom.name()
            )));
        }
        Ok(FiniteMap::from_fn(&self.dom, &g.cod, |a| {
            g.apply(self.apply(a)).clone()
        }))
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().all(|(a, b)| a == b)
    }

    /// Two-sided inverse, if this map is a bijection.
    pub fn inverse(&self) -> Option<FiniteMap> {
        if self.dom.len() != self.cod.len() {
            return None;
        }
        let mut table = BTreeMap::new();
        for (a, b) in &self.table {
            if table.insert(b.clone(), a.clone()).is_some() {
                return None;
            }
        }
        FiniteMap::new(self.cod.clone(), self.dom.clone(), table).ok()
    }
}

impl fmt::Debug for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {{", self.dom.name(), self.cod.name())?;
        for (i, (a, b)) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}↦{b}")?;
        }
        write!(f, "}}")
    }
}

/// Composition of maps per the operation contract: `compose_map(f, g)` sends
/// `a` to `g(f(a))`.
pub fn compose_map(f: &FiniteMap, g: &FiniteMap) -> Result<FiniteMap> {
    f.then(g)
}

/// Shape of a chosen limit, telling the cone how to mediate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    Product,
    Pullback,
    Equalizer,
}

/// A chosen limit: apex, projection legs, and the mediating-map operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCone {
    pub apex: FiniteSet,
    pub legs: Vec<FiniteMap>,
    pub kind: ConeKind,
}

impl LimitCone {
    /// Produces the unique mediating map for a compatible cone with the given
    /// legs (one per leg of the limit, from a common tip).
    ///
    /// The map is computed directly from the limit's shape; uniqueness holds
    /// because the legs are jointly injective on the apex.
    pub fn mediate(&self, cone: &[FiniteMap]) -> Result<FiniteMap> {
        if cone.len() != self.legs.len() {
            return Err(Error::DomainMismatch(format!(
                "cone has {} legs, limit expects {}",
                cone.len(),
                self.legs.len()
            )));
        }
        let tip = match cone.first() {
            Some(l) => l.dom().clone(),
            // A limit of the empty diagram never arises here.
            None => return Err(Error::DomainMismatch("empty cone".into())),
        };
        for leg in cone {
            if *leg.dom() != tip {
                return Err(Error::DomainMismatch(
                    "cone legs have different domains".into(),
                ));
            }
        }
        let value = |t: &Atom| -> Result<Atom> {
            let v = match self.kind {
                ConeKind::Product | ConeKind::Pullback => {
                    Atom::pair(cone[0].apply(t), cone[1].apply(t))
                }
                ConeKind::Equalizer => cone[0].apply(t).clone(),
            };
            if !self.apex.contains(&v) {
                return Err(Error::DomainMismatch(format!(
                    "cone is not compatible with the limit at {t}: {v} is outside the apex"
                )));
            }
            Ok(v)
        };
        let mut table = BTreeMap::new();
        for t in tip.iter() {
            table.insert(t.clone(), value(t)?);
        }
        FiniteMap::new(tip, self.apex.clone(), table)
    }
}

/// Chosen binary product: apex elements are pairs `⟨x,y⟩` in canonical order,
/// legs are the two projections.
pub fn product(a: &FiniteSet, b: &FiniteSet) -> LimitCone {
    let mut elems = Vec::with_capacity(a.len() * b.len());
    let mut table1 = BTreeMap::new();
    let mut table2 = BTreeMap::new();
    for x in a.iter() {
        for y in b.iter() {
            let p = Atom::pair(x, y);
            table1.insert(p.clone(), x.clone());
            table2.insert(p.clone(), y.clone());
            elems.push(p);
        }
    }
    let apex = FiniteSet::new(format!("{}×{}", a.name(), b.name()), elems);
    let p1 = FiniteMap::new(apex.clone(), a.clone(), table1).unwrap();
    let p2 = FiniteMap::new(apex.clone(), b.clone(), table2).unwrap();
    LimitCone {
        apex,
        legs: vec![p1, p2],
        kind: ConeKind::Product,
    }
}

/// Chosen pullback of `f` and `g`: apex is `{⟨x,y⟩ : f(x) = g(y)}` with the
/// restricted projections.
pub fn pullback(f: &FiniteMap, g: &FiniteMap) -> Result<LimitCone> {
    if f.cod() != g.cod() {
        return Err(Error::DomainMismatch(format!(
            "pullback needs equal codomains, got {} and {}",
            f.cod().name(),
            g.cod().name()
        )));
    }
    let mut elems = Vec::new();
    let mut table1 = BTreeMap::new();
    let mut table2 = BTreeMap::new();
    for x in f.dom().iter() {
        for y in g.dom().iter() {
            if f.apply(x) == g.apply(y) {
                let p = Atom::pair(x, y);
                table1.insert(p.clone(), x.clone());
                table2.insert(p.clone(), y.clone());
                elems.push(p);
            }
        }
    }
    let apex = FiniteSet::new(
        format!("{}×_{{{}}}{}", f.dom().name(), f.cod().name(), g.dom().name()),
        elems,
    );
    let p1 = FiniteMap::new(apex.clone(), f.dom().clone(), table1).unwrap();
    let p2 = FiniteMap::new(apex.clone(), g.dom().clone(), table2).unwrap();
    Ok(LimitCone {
        apex,
        legs: vec![p1, p2],
        kind: ConeKind::Pullback,
    })
}

/// Chosen equalizer of a parallel pair: apex is `{x : f(x) = g(x)}` with the
/// inclusion as its single leg.
pub fn equalizer(f: &FiniteMap, g: &FiniteMap) -> Result<LimitCone> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::DomainMismatch(
            "equalizer needs a parallel pair of maps".into(),
        ));
    }
    let elems: Vec<Atom> = f
        .dom()
        .iter()
        .filter(|x| f.apply(x) == g.apply(x))
        .cloned()
        .collect();
    let apex = FiniteSet::new(format!("eq({})", f.dom().name()), elems);
    let incl = FiniteMap::from_fn(&apex, f.dom(), |a| a.clone());
    Ok(LimitCone {
        apex,
        legs: vec![incl],
        kind: ConeKind::Equalizer,
    })
}

/// The chosen terminal object `{⋆}`.
pub fn terminal() -> FiniteSet {
    FiniteSet::new("1", vec![star()])
}

/// The element of the terminal object.
pub fn star() -> Atom {
    Atom::sym("⋆")
}

/// The unique map into the terminal object.
pub fn bang(s: &FiniteSet) -> FiniteMap {
    FiniteMap::constant(s, &terminal(), &star())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(name: &str, elems: &[&str]) -> FiniteSet {
        FiniteSet::new(name, elems.iter().map(|e| Atom::sym(*e)).collect())
    }

    fn map(dom: &FiniteSet, cod: &FiniteSet, rows: &[(&str, &str)]) -> FiniteMap {
        let table = rows
            .iter()
            .map(|(a, b)| (Atom::sym(*a), Atom::sym(*b)))
            .collect();
        FiniteMap::new(dom.clone(), cod.clone(), table).unwrap()
    }

    #[test]
    fn atom_pair_roundtrip() {
        let a = Atom::sym("a");
        let b = Atom::pair(&Atom::sym("x"), &Atom::sym("y"));
        let p = Atom::pair(&a, &b);
        assert_eq!(p.as_str(), "⟨a,⟨x,y⟩⟩");
        assert_eq!(p.unpair(), Some((a.clone(), b.clone())));
        let l = Atom::list(&[a.clone(), b.clone(), p.clone()]);
        assert_eq!(l.unlist(), Some(vec![a, b, p]));
        assert_eq!(Atom::list(&[]).unlist(), Some(vec![]));
    }

    #[test]
    fn sets_ignore_names_and_canonicalize_order() {
        let s1 = set("S", &["b", "a"]);
        let s2 = set("T", &["a", "b", "a"]);
        assert_eq!(s1, s2);
        assert_eq!(s1.elements(), s2.elements());
    }

    #[test]
    fn compose_constant_maps() {
        let ab = set("AB", &["a", "b"]);
        let x = set("X", &["x"]);
        let y = set("Y", &["y"]);
        let f = map(&ab, &x, &[("a", "x"), ("b", "x")]);
        let g = map(&x, &y, &[("x", "y")]);
        let gf = compose_map(&f, &g).unwrap();
        assert_eq!(gf, FiniteMap::constant(&ab, &y, &Atom::sym("y")));
    }

    #[test]
    fn compose_identity_and_swap() {
        let s = set("S", &["0", "1"]);
        let id = FiniteMap::identity(&s);
        let swap = map(&s, &s, &[("0", "1"), ("1", "0")]);
        assert_eq!(compose_map(&id, &swap).unwrap(), swap);
        assert_eq!(compose_map(&swap, &swap).unwrap(), id);
    }

    #[test]
    fn compose_rejects_mismatched_endpoints() {
        let s = set("S", &["0", "1"]);
        let t = set("T", &["x"]);
        let f = map(&s, &t, &[("0", "x"), ("1", "x")]);
        assert!(matches!(
            compose_map(&f, &f),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn product_shapes() {
        let ab = set("AB", &["a", "b"]);
        let x = set("X", &["x"]);
        let p = product(&ab, &x);
        assert_eq!(p.apex.len(), 2);
        let two = set("2", &["0", "1"]);
        assert_eq!(product(&two, &two).apex.len(), 4);
        let empty = FiniteSet::empty("∅");
        assert!(product(&empty, &x).apex.is_empty());
    }

    #[test]
    fn pullback_shapes() {
        let two = set("2", &["0", "1"]);
        let id = FiniteMap::identity(&two);
        let zero = FiniteMap::constant(&two, &two, &Atom::sym("0"));
        let pb = pullback(&id, &zero).unwrap();
        let expect = vec![
            Atom::pair(&Atom::sym("0"), &Atom::sym("0")),
            Atom::pair(&Atom::sym("0"), &Atom::sym("1")),
        ];
        assert_eq!(pb.apex.elements(), &expect[..]);

        // Kernel-pair shape: f == g gives the relation f(x) = f(y).
        let f = map(&two, &two, &[("0", "0"), ("1", "0")]);
        let kp = pullback(&f, &f).unwrap();
        assert_eq!(kp.apex.len(), 4);

        // g an isomorphism: apex in bijection with f.dom.
        let swap = map(&two, &two, &[("0", "1"), ("1", "0")]);
        let pb = pullback(&f, &swap).unwrap();
        assert_eq!(pb.apex.len(), f.dom().len());
    }

    #[test]
    fn equalizer_shapes() {
        let two = set("2", &["0", "1"]);
        let id = FiniteMap::identity(&two);
        let swap = map(&two, &two, &[("0", "1"), ("1", "0")]);
        let zero = FiniteMap::constant(&two, &two, &Atom::sym("0"));
        assert_eq!(equalizer(&id, &id).unwrap().apex, two);
        assert!(equalizer(&id, &swap).unwrap().apex.is_empty());
        assert_eq!(
            equalizer(&id, &zero).unwrap().apex.elements(),
            &[Atom::sym("0")][..]
        );
    }

    #[test]
    fn terminal_and_bang() {
        assert_eq!(terminal().elements(), &[star()][..]);
        let ab = set("AB", &["a", "b"]);
        assert_eq!(bang(&ab), FiniteMap::constant(&ab, &terminal(), &star()));
        let empty = FiniteSet::empty("∅");
        assert_eq!(bang(&empty).table().len(), 0);
    }

    /// Mediating maps exist, commute with the legs, and are unique among all
    /// candidate maps, checked by exhaustion on small carriers.
    #[test]
    fn universal_properties_by_exhaustion() {
        let sets = [
            FiniteSet::empty("∅"),
            set("1", &["u"]),
            set("2", &["0", "1"]),
            set("3", &["0", "1", "2"]),
        ];
        let tips = &sets;

        // Products.
        for a in &sets {
            for b in &sets {
                let cone = product(a, b);
                for tip in tips {
                    for l1 in tip.maps_to(a) {
                        for l2 in tip.maps_to(b) {
                            let m = cone.mediate(&[l1.clone(), l2.clone()]).unwrap();
                            assert_eq!(m.then(&cone.legs[0]).unwrap(), l1);
                            assert_eq!(m.then(&cone.legs[1]).unwrap(), l2);
                            let count = tip
                                .maps_to(&cone.apex)
                                .into_iter()
                                .filter(|h| {
                                    h.then(&cone.legs[0]).unwrap() == l1
                                        && h.then(&cone.legs[1]).unwrap() == l2
                                })
                                .count();
                            assert_eq!(count, 1, "mediating map must be unique");
                        }
                    }
                }
            }
        }

        // Pullbacks over a fixed codomain.
        let c = set("C", &["p", "q"]);
        for a in &sets[..3] {
            for b in &sets[..3] {
                for f in a.maps_to(&c) {
                    for g in b.maps_to(&c) {
                        let cone = pullback(&f, &g).unwrap();
                        for tip in &sets[..3] {
                            for l1 in tip.maps_to(a) {
                                for l2 in tip.maps_to(b) {
                                    let compatible = l1.then(&f).unwrap() == l2.then(&g).unwrap();
                                    let mediated = cone.mediate(&[l1.clone(), l2.clone()]);
                                    assert_eq!(compatible, mediated.is_ok());
                                    if let Ok(m) = mediated {
                                        assert_eq!(m.then(&cone.legs[0]).unwrap(), l1);
                                        assert_eq!(m.then(&cone.legs[1]).unwrap(), l2);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        // Equalizers.
        let two = set("2", &["0", "1"]);
        for f in two.maps_to(&two) {
            for g in two.maps_to(&two) {
                let cone = equalizer(&f, &g).unwrap();
                for tip in &sets[..3] {
                    for l in tip.maps_to(&two) {
                        let compatible = l.then(&f).unwrap() == l.then(&g).unwrap();
                        let mediated = cone.mediate(&[l.clone()]);
                        assert_eq!(compatible, mediated.is_ok());
                        if let Ok(m) = mediated {
                            assert_eq!(m.then(&cone.legs[0]).unwrap(), l);
                        }
                    }
                }
            }
        }
    }

    /// Composition of maps is associative and unital, exhaustively over all
    /// maps between carriers of size at most three.
    #[test]
    fn composition_associative_and_unital() {
        let sets = [
            FiniteSet::empty("∅"),
            set("1", &["u"]),
            set("2", &["0", "1"]),
            set("3", &["0", "1", "2"]),
        ];
        for a in &sets {
            for b in &sets {
                for f in a.maps_to(b) {
                    assert_eq!(FiniteMap::identity(a).then(&f).unwrap(), f);
                    assert_eq!(f.then(&FiniteMap::identity(b)).unwrap(), f);
                }
            }
        }
        for a in &sets[1..3] {
            for b in &sets[1..3] {
                for c in &sets[1..3] {
                    for d in &sets[1..3] {
                        for f in a.maps_to(b) {
                            for g in b.maps_to(c) {
                                for h in c.maps_to(d) {
                                    let lhs = f.then(&g).unwrap().then(&h).unwrap();
                                    let rhs = f.then(&g.then(&h).unwrap()).unwrap();
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
