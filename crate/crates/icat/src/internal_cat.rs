//! Internal categories, functors and natural transformations, their finite
//! limits, standard constructions, and axiom checkers.
//!
//! Composition order is fixed globally: `comp` tables are keyed by pairs
//! `⟨g,f⟩` with `src(g) = tgt(f)`, and `comp(⟨g,f⟩)` means "g after f". The
//! key set is the chosen pullback apex of `src` and `tgt` from [`ambient`],
//! so well-typedness of the table is structural.

use std::collections::BTreeMap;

use crate::ambient::{self, product, pullback, Atom, FiniteMap, FiniteSet};
use crate::error::Error;
use crate::report::{Axiom, CheckOptions, CheckReport};
use crate::Result;

/// An internal category: object and arrow carriers with source, target,
/// identity and composition tables.
///
/// Like every structure in this crate, equality is canonical-encoding
/// equality of the carrier data; the name is a label only.
#[derive(Debug, Clone)]
pub struct InternalCategory {
    pub name: String,
    pub obj: FiniteSet,
    pub arr: FiniteSet,
    pub src: FiniteMap,
    pub tgt: FiniteMap,
    pub ids: FiniteMap,
    pub comp: FiniteMap,
}

impl PartialEq for InternalCategory {
    fn eq(&self, other: &Self) -> bool {
        self.obj == other.obj
            && self.arr == other.arr
            && self.src == other.src
            && self.tgt == other.tgt
            && self.ids == other.ids
            && self.comp == other.comp
    }
}
impl Eq for InternalCategory {}

impl InternalCategory {
    /// Validates carrier shapes; axiom violations are left to
    /// [`check_category`].
    pub fn new(
        name: impl Into<String>,
        obj: FiniteSet,
        arr: FiniteSet,
        src: FiniteMap,
        tgt: FiniteMap,
        ids: FiniteMap,
        comp: FiniteMap,
    ) -> Result<InternalCategory> {
        if *src.dom() != arr || *src.cod() != obj {
            return Err(Error::MalformedData("src must be a map arr -> obj".into()));
        }
        if *tgt.dom() != arr || *tgt.cod() != obj {
            return Err(Error::MalformedData("tgt must be a map arr -> obj".into()));
        }
        if *ids.dom() != obj || *ids.cod() != arr {
            return Err(Error::MalformedData("ids must be a map obj -> arr".into()));
        }
        let apex = pullback(&src, &tgt)?.apex;
        if *comp.dom() != apex {
            return Err(Error::MalformedData(
                "comp must be defined on exactly the composability pullback apex".into(),
            ));
        }
        if *comp.cod() != arr {
            return Err(Error::MalformedData("comp must land in arr".into()));
        }
        Ok(InternalCategory {
            name: name.into(),
            obj,
            arr,
            src,
            tgt,
            ids,
            comp,
        })
    }

    /// Builds the composition key `⟨g,f⟩` for "g after f".
    pub fn comp_key(g: &Atom, f: &Atom) -> Atom {
        Atom::pair(g, f)
    }

    /// Composes two arrows, `g` after `f`.
    pub fn compose(&self, g: &Atom, f: &Atom) -> Result<Atom> {
        match self.comp.get(&Self::comp_key(g, f)) {
            Some(a) => Ok(a.clone()),
            None => Err(Error::DomainMismatch(format!(
                "arrows are not composable in {}: {g} after {f}",
                self.name
            ))),
        }
    }

    pub fn id_of(&self, obj: &Atom) -> &Atom {
        self.ids.apply(obj)
    }

    /// Hom-set between two objects, in canonical order.
    pub fn hom(&self, a: &Atom, b: &Atom) -> Vec<&Atom> {
        self.arr
            .iter()
            .filter(|f| self.src.apply(f) == a && self.tgt.apply(f) == b)
            .collect()
    }

    /// Composable pairs `(g, f)` with `src(g) = tgt(f)`, in canonical order
    /// of the pair atom.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Atom, Atom)> + '_ {
        self.comp.dom().iter().map(|k| k.unpair().unwrap())
    }

    /// A two-sided inverse of `f`, if one exists.
    pub fn find_inverse(&self, f: &Atom) -> Option<Atom> {
        let a = self.src.apply(f);
        let b = self.tgt.apply(f);
        for g in self.arr.iter() {
            if self.src.apply(g) == b
                && self.tgt.apply(g) == a
                && self.compose(g, f).ok().as_ref() == Some(self.id_of(a))
                && self.compose(f, g).ok().as_ref() == Some(self.id_of(b))
            {
                return Some(g.clone());
            }
        }
        None
    }
}

/// Checks the category axioms, reporting each family with witnesses.
pub fn check_category(c: &InternalCategory, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&c.name);

    let mut ids_typing = Axiom::new("identity-typing", opts);
    for a in c.obj.iter() {
        let id = c.id_of(a);
        if c.src.apply(id) != a || c.tgt.apply(id) != a {
            ids_typing.fail(&[a, id]);
        }
    }
    report.push(ids_typing);

    let mut comp_typing = Axiom::new("composition-typing", opts);
    for (g, f) in c.composable_pairs() {
        let gf = c.comp.apply(&InternalCategory::comp_key(&g, &f));
        if c.src.apply(gf) != c.src.apply(&f) || c.tgt.apply(gf) != c.tgt.apply(&g) {
            comp_typing.fail(&[&g, &f, gf]);
        }
    }
    report.push(comp_typing);

    let mut left_unit = Axiom::new("left-unit", opts);
    let mut right_unit = Axiom::new("right-unit", opts);
    for f in c.arr.iter() {
        let id_t = c.id_of(c.tgt.apply(f)).clone();
        match c.compose(&id_t, f) {
            Ok(v) if v == *f => {}
            _ => left_unit.fail(&[f]),
        }
        let id_s = c.id_of(c.src.apply(f)).clone();
        match c.compose(f, &id_s) {
            Ok(v) if v == *f => {}
            _ => right_unit.fail(&[f]),
        }
    }
    report.push(left_unit);
    report.push(right_unit);

    let mut assoc = Axiom::new("associativity", opts);
    for (g, f) in c.composable_pairs() {
        for h in c.arr.iter() {
            if c.src.apply(h) != c.tgt.apply(&g) {
                continue;
            }
            let hg = c.compose(h, &g);
            let gf = c.compose(&g, &f);
            let two_step = hg.and_then(|hg| c.compose(&hg, &f));
            let other = gf.and_then(|gf| c.compose(h, &gf));
            match (two_step, other) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => assoc.fail(&[h, &g, &f]),
            }
        }
    }
    report.push(assoc);

    report
}

/// An internal functor: object and arrow components between two categories.
#[derive(Debug, Clone)]
pub struct InternalFunctor {
    pub name: String,
    pub dom: InternalCategory,
    pub cod: InternalCategory,
    pub f0: FiniteMap,
    pub f1: FiniteMap,
}

impl PartialEq for InternalFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom
            && self.cod == other.cod
            && self.f0 == other.f0
            && self.f1 == other.f1
    }
}
impl Eq for InternalFunctor {}

impl InternalFunctor {
    pub fn new(
        name: impl Into<String>,
        dom: InternalCategory,
        cod: InternalCategory,
        f0: FiniteMap,
        f1: FiniteMap,
    ) -> Result<InternalFunctor> {
        if *f0.dom() != dom.obj || *f0.cod() != cod.obj {
            return Err(Error::MalformedData(
                "functor object component has wrong carriers".into(),
            ));
        }
        if *f1.dom() != dom.arr || *f1.cod() != cod.arr {
            return Err(Error::MalformedData(
                "functor arrow component has wrong carriers".into(),
            ));
        }
        Ok(InternalFunctor {
            name: name.into(),
            dom,
            cod,
            f0,
            f1,
        })
    }

    pub fn apply_obj(&self, a: &Atom) -> &Atom {
        self.f0.apply(a)
    }

    pub fn apply_arr(&self, f: &Atom) -> &Atom {
        self.f1.apply(f)
    }

    /// Table equality under canonical encoding; endpoint names are ignored.
    pub fn same_tables(&self, other: &InternalFunctor) -> bool {
        self.f0 == other.f0 && self.f1 == other.f1
    }
}

pub fn identity_functor(c: &InternalCategory) -> InternalFunctor {
    InternalFunctor::new(
        format!("id_{}", c.name),
        c.clone(),
        c.clone(),
        FiniteMap::identity(&c.obj),
        FiniteMap::identity(&c.arr),
    )
    .unwrap()
}

/// `g` after `f`.
pub fn compose_functors(g: &InternalFunctor, f: &InternalFunctor) -> Result<InternalFunctor> {
    if f.cod != g.dom {
        return Err(Error::EndpointMismatch(format!(
            "cannot compose functors {} and {}",
            g.name, f.name
        )));
    }
    InternalFunctor::new(
        format!("{}∘{}", g.name, f.name),
        f.dom.clone(),
        g.cod.clone(),
        f.f0.then(&g.f0)?,
        f.f1.then(&g.f1)?,
    )
}

pub fn check_functor(f: &InternalFunctor, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&f.name);

    let mut srctgt = Axiom::new("source-target-preservation", opts);
    for a in f.dom.arr.iter() {
        let fa = f.apply_arr(a);
        if f.cod.src.apply(fa) != f.apply_obj(f.dom.src.apply(a))
            || f.cod.tgt.apply(fa) != f.apply_obj(f.dom.tgt.apply(a))
        {
            srctgt.fail(&[a, fa]);
        }
    }
    report.push(srctgt);

    let mut ids = Axiom::new("identity-preservation", opts);
    for a in f.dom.obj.iter() {
        let lhs = f.apply_arr(f.dom.id_of(a));
        let rhs = f.cod.id_of(f.apply_obj(a));
        if lhs != rhs {
            ids.fail(&[a, lhs, rhs]);
        }
    }
    report.push(ids);

    let mut comp = Axiom::new("composition-preservation", opts);
    for (g, h) in f.dom.composable_pairs() {
        let lhs = f.dom.compose(&g, &h).map(|gh| f.apply_arr(&gh).clone());
        let rhs = f.cod.compose(f.apply_arr(&g), f.apply_arr(&h));
        match (lhs, rhs) {
            (Ok(x), Ok(y)) if x == y => {}
            _ => comp.fail(&[&g, &h]),
        }
    }
    report.push(comp);

    report
}

/// An internal natural transformation between parallel functors.
#[derive(Debug, Clone)]
pub struct InternalNat {
    pub name: String,
    pub src_f: InternalFunctor,
    pub tgt_f: InternalFunctor,
    /// Component table: objects of the domain to arrows of the codomain.
    pub component: FiniteMap,
}

impl PartialEq for InternalNat {
    fn eq(&self, other: &Self) -> bool {
        self.src_f == other.src_f
            && self.tgt_f == other.tgt_f
            && self.component == other.component
    }
}
impl Eq for InternalNat {}

impl InternalNat {
    pub fn new(
        name: impl Into<String>,
        src_f: InternalFunctor,
        tgt_f: InternalFunctor,
        component: FiniteMap,
    ) -> Result<InternalNat> {
        if src_f.dom != tgt_f.dom || src_f.cod != tgt_f.cod {
            return Err(Error::EndpointMismatch(
                "natural transformation needs parallel functors".into(),
            ));
        }
        if *component.dom() != src_f.dom.obj || *component.cod() != src_f.cod.arr {
            return Err(Error::MalformedData(
                "component must be a map from domain objects to codomain arrows".into(),
            ));
        }
        Ok(InternalNat {
            name: name.into(),
            src_f,
            tgt_f,
            component,
        })
    }

    pub fn at(&self, a: &Atom) -> &Atom {
        self.component.apply(a)
    }
}

pub fn identity_nat(f: &InternalFunctor) -> InternalNat {
    let component = FiniteMap::from_fn(&f.dom.obj, &f.cod.arr, |a| {
        f.cod.id_of(f.apply_obj(a)).clone()
    });
    InternalNat::new(format!("id_{}", f.name), f.clone(), f.clone(), component).unwrap()
}

pub fn check_nat(n: &InternalNat, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&n.name);
    let f = &n.src_f;
    let g = &n.tgt_f;
    let cod = &f.cod;

    let mut typing = Axiom::new("component-typing", opts);
    for a in f.dom.obj.iter() {
        let c = n.at(a);
        if cod.src.apply(c) != f.apply_obj(a) || cod.tgt.apply(c) != g.apply_obj(a) {
            typing.fail(&[a, c]);
        }
    }
    report.push(typing);

    let mut naturality = Axiom::new("naturality", opts);
    for h in f.dom.arr.iter() {
        let a0 = f.dom.src.apply(h);
        let a1 = f.dom.tgt.apply(h);
        let lhs = cod.compose(n.at(a1), f.apply_arr(h));
        let rhs = cod.compose(g.apply_arr(h), n.at(a0));
        match (lhs, rhs) {
            (Ok(x), Ok(y)) if x == y => {}
            _ => naturality.fail(&[h]),
        }
    }
    report.push(naturality);

    report
}

/// Vertical composition, `b` after `a`.
pub fn vcompose_nats(b: &InternalNat, a: &InternalNat) -> Result<InternalNat> {
    if a.tgt_f != b.src_f {
        return Err(Error::EndpointMismatch(
            "vertical composition needs matching middle functor".into(),
        ));
    }
    let cod = &a.src_f.cod;
    let mut table = BTreeMap::new();
    for x in a.src_f.dom.obj.iter() {
        table.insert(x.clone(), cod.compose(b.at(x), a.at(x))?);
    }
    InternalNat::new(
        format!("{}·{}", b.name, a.name),
        a.src_f.clone(),
        b.tgt_f.clone(),
        FiniteMap::new(a.src_f.dom.obj.clone(), cod.arr.clone(), table)?,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhiskerSide {
    /// Precompose with the functor: components are taken at its object images.
    Pre,
    /// Postcompose with the functor: components are pushed through its arrow
    /// component.
    Post,
}

/// Horizontal whiskering of a natural transformation with a functor.
pub fn hwhisker(n: &InternalNat, f: &InternalFunctor, side: WhiskerSide) -> Result<InternalNat> {
    match side {
        WhiskerSide::Pre => {
            if f.cod != n.src_f.dom {
                return Err(Error::EndpointMismatch(
                    "whiskering functor must land in the transformation's domain".into(),
                ));
            }
            let component = f.f0.then(&n.component)?;
            InternalNat::new(
                format!("{}⋆{}", n.name, f.name),
                compose_functors(&n.src_f, f)?,
                compose_functors(&n.tgt_f, f)?,
                component,
            )
        }
        WhiskerSide::Post => {
            if n.src_f.cod != f.dom {
                return Err(Error::EndpointMismatch(
                    "whiskering functor must start at the transformation's codomain".into(),
                ));
            }
            let component = n.component.then(&f.f1)?;
            InternalNat::new(
                format!("{}⋆{}", f.name, n.name),
                compose_functors(f, &n.src_f)?,
                compose_functors(f, &n.tgt_f)?,
                component,
            )
        }
    }
}

/// Pointwise product of two categories.
pub fn product_cat(a: &InternalCategory, b: &InternalCategory) -> InternalCategory {
    let obj = product(&a.obj, &b.obj).apex;
    let arr = product(&a.arr, &b.arr).apex;
    let comp_pointwise = |cat_a: &InternalCategory, cat_b: &InternalCategory, key: &Atom| {
        let (g, f) = key.unpair().unwrap();
        let (g1, g2) = g.unpair().unwrap();
        let (f1, f2) = f.unpair().unwrap();
        Atom::pair(
            &cat_a.compose(&g1, &f1).unwrap(),
            &cat_b.compose(&g2, &f2).unwrap(),
        )
    };
    let src = FiniteMap::from_fn(&arr, &obj, |p| {
        let (x, y) = p.unpair().unwrap();
        Atom::pair(a.src.apply(&x), b.src.apply(&y))
    });
    let tgt = FiniteMap::from_fn(&arr, &obj, |p| {
        let (x, y) = p.unpair().unwrap();
        Atom::pair(a.tgt.apply(&x), b.tgt.apply(&y))
    });
    let ids = FiniteMap::from_fn(&obj, &arr, |p| {
        let (x, y) = p.unpair().unwrap();
        Atom::pair(a.id_of(&x), b.id_of(&y))
    });
    let apex = pullback(&src, &tgt).unwrap().apex;
    let comp = FiniteMap::from_fn(&apex, &arr, |key| comp_pointwise(a, b, key));
    InternalCategory::new(
        format!("{}×{}", a.name, b.name),
        obj,
        arr,
        src,
        tgt,
        ids,
        comp,
    )
    .unwrap()
}

/// The terminal category: one object, one arrow.
pub fn terminal_cat() -> InternalCategory {
    let one = ambient::terminal();
    let star = ambient::star();
    let src = FiniteMap::identity(&one);
    let tgt = FiniteMap::identity(&one);
    let ids = FiniteMap::identity(&one);
    let apex = pullback(&src, &tgt).unwrap().apex;
    let comp = FiniteMap::constant(&apex, &one, &star);
    InternalCategory::new("1", one.clone(), one, src, tgt, ids, comp).unwrap()
}

/// The discrete category on a carrier: arrows are exactly the identities.
pub fn discrete(s: &FiniteSet) -> InternalCategory {
    let src = FiniteMap::identity(s);
    let tgt = FiniteMap::identity(s);
    let ids = FiniteMap::identity(s);
    let apex = pullback(&src, &tgt).unwrap().apex;
    let comp = FiniteMap::from_fn(&apex, s, |key| key.unpair().unwrap().0);
    InternalCategory::new(
        format!("Dis({})", s.name()),
        s.clone(),
        s.clone(),
        src,
        tgt,
        ids,
        comp,
    )
    .unwrap()
}

/// The indiscrete category on a carrier: exactly one arrow `⟨x,y⟩ : x → y`
/// for every ordered pair.
pub fn indiscrete(s: &FiniteSet) -> InternalCategory {
    let arr = product(s, s).apex;
    let src = FiniteMap::from_fn(&arr, s, |p| p.unpair().unwrap().0);
    let tgt = FiniteMap::from_fn(&arr, s, |p| p.unpair().unwrap().1);
    let ids = FiniteMap::from_fn(s, &arr, |x| Atom::pair(x, x));
    let apex = pullback(&src, &tgt).unwrap().apex;
    let comp = FiniteMap::from_fn(&apex, &arr, |key| {
        let (g, f) = key.unpair().unwrap();
        let (_, z) = g.unpair().unwrap();
        let (x, _) = f.unpair().unwrap();
        Atom::pair(&x, &z)
    });
    InternalCategory::new(
        format!("Ind({})", s.name()),
        s.clone(),
        arr,
        src,
        tgt,
        ids,
        comp,
    )
    .unwrap()
}

/// The opposite category: swaps source and target and transposes the
/// composition table. An involution on the nose.
pub fn opposite(c: &InternalCategory) -> InternalCategory {
    let src = c.tgt.clone();
    let tgt = c.src.clone();
    let apex = pullback(&src, &tgt).unwrap().apex;
    let comp = FiniteMap::from_fn(&apex, &c.arr, |key| {
        let (g, f) = key.unpair().unwrap();
        c.compose(&f, &g).unwrap()
    });
    let name = match c.name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", c.name),
    };
    InternalCategory::new(name, c.obj.clone(), c.arr.clone(), src, tgt, c.ids.clone(), comp)
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn meet_monoid_delooping_passes() {
        let c = corpus::deloop_meet();
        let report = check_category(&c, &opts());
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn meet_monoid_unit_mutation_fails_with_witness() {
        let c = corpus::deloop_meet_unit_mutant();
        let report = check_category(&c, &opts());
        assert!(!report.passed());
        let left = report.axiom("left-unit").unwrap();
        assert_eq!(left.failures, 1);
        assert_eq!(left.witnesses, vec!["(s)".to_string()]);
        for ax in ["identity-typing", "composition-typing", "right-unit", "associativity"] {
            assert!(report.axiom(ax).unwrap().passed(), "{ax} should pass");
        }
    }

    #[test]
    fn terminal_cat_passes() {
        let c = terminal_cat();
        assert_eq!(c.obj.len(), 1);
        assert_eq!(c.arr.len(), 1);
        assert!(check_category(&c, &opts()).passed());
    }

    #[test]
    fn identity_functor_passes_and_mutation_fails() {
        let c = corpus::deloop_z2();
        let id = identity_functor(&c);
        assert!(check_functor(&id, &opts()).passed());

        // Redirect the arrow component on the identity arrow.
        let mut f1 = id.f1.table().clone();
        f1.insert(corpus::z2_e(), corpus::z2_s());
        let bad = InternalFunctor::new(
            "broken",
            c.clone(),
            c.clone(),
            id.f0.clone(),
            FiniteMap::new(c.arr.clone(), c.arr.clone(), f1).unwrap(),
        )
        .unwrap();
        let report = check_functor(&bad, &opts());
        assert!(!report.passed());
        assert!(!report.axiom("identity-preservation").unwrap().passed());
        let witnesses = &report.axiom("identity-preservation").unwrap().witnesses;
        assert!(witnesses[0].contains("•"), "witness names the object: {witnesses:?}");
    }

    #[test]
    fn identity_nat_passes() {
        let c = corpus::deloop_meet();
        let n = identity_nat(&identity_functor(&c));
        assert!(check_nat(&n, &opts()).passed());
    }

    #[test]
    fn nat_on_noncommutative_monoid_fails_naturality_only() {
        let n = corpus::rightzero_nat_mutant();
        let report = check_nat(&n, &opts());
        assert!(report.axiom("component-typing").unwrap().passed());
        assert!(!report.axiom("naturality").unwrap().passed());
    }

    #[test]
    fn functor_unit_law_and_composition() {
        let c = corpus::deloop_z2();
        let g = corpus::z2_collapse_endofunctor();
        let composed = compose_functors(&g, &identity_functor(&c)).unwrap();
        assert!(composed.same_tables(&g));
        let composed = compose_functors(&identity_functor(&c), &g).unwrap();
        assert!(composed.same_tables(&g));
        assert!(check_functor(&compose_functors(&g, &g).unwrap(), &opts()).passed());
    }

    #[test]
    fn vertical_composition_on_delooping_is_monoid_product() {
        // Natural transformations between identity functors of a commutative
        // delooping are monoid elements; vertical composition multiplies.
        let c = corpus::deloop_z2();
        let id = identity_functor(&c);
        let nat_with = |value: &Atom| {
            InternalNat::new(
                format!("n{value}"),
                id.clone(),
                id.clone(),
                FiniteMap::constant(&c.obj, &c.arr, value),
            )
            .unwrap()
        };
        let ns = nat_with(&corpus::z2_s());
        assert!(check_nat(&ns, &opts()).passed());
        let ss = vcompose_nats(&ns, &ns).unwrap();
        assert_eq!(ss.at(&corpus::z2_obj()), &corpus::z2_e());
        let se = vcompose_nats(&ns, &identity_nat(&id)).unwrap();
        assert_eq!(se.component, ns.component);
    }

    #[test]
    fn whisker_of_identity_nat_is_identity_nat() {
        let c = corpus::deloop_z2();
        let g = corpus::z2_collapse_endofunctor();
        let id_nat = identity_nat(&identity_functor(&c));
        let pre = hwhisker(&id_nat, &g, WhiskerSide::Pre).unwrap();
        assert_eq!(pre.component, identity_nat(&g).component);
        let post = hwhisker(&id_nat, &g, WhiskerSide::Post).unwrap();
        assert_eq!(post.component, identity_nat(&g).component);
    }

    #[test]
    fn interchange_law_on_deloopings() {
        // All four transformations live on the delooping of Z/2 between
        // identity functors; both interchange orders must agree.
        let c = corpus::deloop_z2();
        let id = identity_functor(&c);
        let nat_with = |value: &Atom| {
            InternalNat::new(
                format!("n{value}"),
                id.clone(),
                id.clone(),
                FiniteMap::constant(&c.obj, &c.arr, value),
            )
            .unwrap()
        };
        for a in [corpus::z2_e(), corpus::z2_s()] {
            for b in [corpus::z2_e(), corpus::z2_s()] {
                for a2 in [corpus::z2_e(), corpus::z2_s()] {
                    for b2 in [corpus::z2_e(), corpus::z2_s()] {
                        let alpha = nat_with(&a);
                        let beta = nat_with(&b);
                        let alpha2 = nat_with(&a2);
                        let beta2 = nat_with(&b2);
                        // Horizontal composite via whiskers, both ways.
                        let h1 = |x: &InternalNat, y: &InternalNat| {
                            vcompose_nats(
                                &hwhisker(y, &id, WhiskerSide::Pre).unwrap(),
                                &hwhisker(x, &id, WhiskerSide::Post).unwrap(),
                            )
                            .unwrap()
                        };
                        let lhs = h1(&vcompose_nats(&beta, &alpha).unwrap(), &vcompose_nats(&beta2, &alpha2).unwrap());
                        let rhs = vcompose_nats(&h1(&beta, &beta2), &h1(&alpha, &alpha2)).unwrap();
                        assert_eq!(lhs.component, rhs.component);
                    }
                }
            }
        }
    }

    #[test]
    fn product_with_terminal_is_isomorphic_to_factor() {
        let a = corpus::deloop_meet();
        let p = product_cat(&a, &terminal_cat());
        assert!(check_category(&p, &opts()).passed());
        assert_eq!(p.arr.len(), a.arr.len());
        // The projection is an isomorphism: build both directions.
        let proj0 = FiniteMap::from_fn(&p.obj, &a.obj, |x| x.unpair().unwrap().0);
        let proj1 = FiniteMap::from_fn(&p.arr, &a.arr, |x| x.unpair().unwrap().0);
        let proj = InternalFunctor::new("π", p.clone(), a.clone(), proj0, proj1).unwrap();
        assert!(check_functor(&proj, &opts()).passed());
        let star = ambient::star();
        let inj0 = FiniteMap::from_fn(&a.obj, &p.obj, |x| Atom::pair(x, &star));
        let inj1 = FiniteMap::from_fn(&a.arr, &p.arr, |x| Atom::pair(x, &star));
        let inj = InternalFunctor::new("ι", a.clone(), p.clone(), inj0, inj1).unwrap();
        assert!(check_functor(&inj, &opts()).passed());
        assert!(compose_functors(&proj, &inj).unwrap().same_tables(&identity_functor(&a)));
        assert!(compose_functors(&inj, &proj).unwrap().same_tables(&identity_functor(&p)));
    }

    #[test]
    fn product_of_deloopings_multiplies_arrow_counts() {
        let a = corpus::deloop_meet();
        let b = corpus::deloop_z2();
        let p = product_cat(&a, &b);
        assert_eq!(p.arr.len(), a.arr.len() * b.arr.len());
        assert!(check_category(&p, &opts()).passed());
    }

    #[test]
    fn discrete_indiscrete_opposite() {
        let s = FiniteSet::new("S", vec![Atom::sym("a"), Atom::sym("b")]);
        let d = discrete(&s);
        assert_eq!(d.arr.len(), 2);
        assert!(check_category(&d, &opts()).passed());

        let i = indiscrete(&s);
        assert_eq!(i.arr.len(), 4);
        assert!(check_category(&i, &opts()).passed());
        let a = Atom::sym("a");
        let b = Atom::sym("b");
        let xy = Atom::pair(&a, &b);
        let yz = Atom::pair(&b, &a);
        assert_eq!(i.compose(&yz, &xy).unwrap(), Atom::pair(&a, &a));

        let c = corpus::rightzero_delooping();
        let op = opposite(&c);
        assert!(check_category(&op, &opts()).passed());
        assert_ne!(op.comp, c.comp);
        assert_eq!(opposite(&op), c);

        // Empty carriers are first-class.
        let e = FiniteSet::empty("∅");
        assert!(check_category(&discrete(&e), &opts()).passed());
        assert!(check_category(&indiscrete(&e), &opts()).passed());
    }

    /// Triangle identities for the discrete ⊣ objects ⊣ indiscrete adjunctions,
    /// on carriers of size at most three.
    #[test]
    fn dis_u_ind_adjunction_triangles() {
        let carriers = [
            FiniteSet::empty("∅"),
            FiniteSet::new("1", vec![Atom::sym("u")]),
            FiniteSet::new("2", vec![Atom::sym("a"), Atom::sym("b")]),
            FiniteSet::new(
                "3",
                vec![Atom::sym("a"), Atom::sym("b"), Atom::sym("c")],
            ),
        ];
        let cats = [
            corpus::deloop_meet(),
            corpus::rightzero_delooping(),
            indiscrete(&carriers[2]),
        ];

        // Dis ⊣ U: counit ε_A : Dis(U A) → A sends x to id_x; unit is the
        // identity on carriers. Triangles: U(ε_A) ∘ η_{U A} = id, and
        // ε_{Dis S} ∘ Dis(η_S) = id.
        for a in &cats {
            let dis_ua = discrete(&a.obj);
            let counit = InternalFunctor::new(
                "ε",
                dis_ua.clone(),
                a.clone(),
                FiniteMap::identity(&a.obj),
                a.ids.clone(),
            )
            .unwrap();
            assert!(check_functor(&counit, &opts()).passed());
            // U(ε) ∘ η = id on the object carrier.
            assert!(counit.f0.is_identity());
        }
        for s in &carriers {
            let dis = discrete(s);
            // Dis(η_S) is the identity functor here, so the triangle is the
            // statement that ε_{Dis S} is the identity.
            let counit = InternalFunctor::new(
                "ε",
                discrete(&dis.obj),
                dis.clone(),
                FiniteMap::identity(&dis.obj),
                dis.ids.clone(),
            )
            .unwrap();
            assert!(counit.same_tables(&identity_functor(&dis)));
        }

        // U ⊣ Ind: unit η_A : A → Ind(U A) sends f to ⟨src f, tgt f⟩; counit
        // on carriers is the identity. Triangles: ε_{U A} ∘ U(η_A) = id and
        // Ind(ε_S) ∘ η_{Ind S} = id.
        for a in &cats {
            let ind_ua = indiscrete(&a.obj);
            let unit = InternalFunctor::new(
                "η",
                a.clone(),
                ind_ua.clone(),
                FiniteMap::identity(&a.obj),
                FiniteMap::from_fn(&a.arr, &ind_ua.arr, |f| {
                    Atom::pair(a.src.apply(f), a.tgt.apply(f))
                }),
            )
            .unwrap();
            assert!(check_functor(&unit, &opts()).passed());
            assert!(unit.f0.is_identity());
        }
        for s in &carriers {
            let ind = indiscrete(s);
            let unit = InternalFunctor::new(
                "η",
                ind.clone(),
                indiscrete(&ind.obj),
                FiniteMap::identity(&ind.obj),
                FiniteMap::from_fn(&ind.arr, &indiscrete(&ind.obj).arr, |f| {
                    Atom::pair(ind.src.apply(f), ind.tgt.apply(f))
                }),
            )
            .unwrap();
            // η_{Ind S} is the identity on arrows because src/tgt of ⟨x,y⟩
            // recover the pair itself.
            assert!(unit.f1.is_identity());
        }
    }

    /// Outputs of every construction pass their checkers.
    #[test]
    fn constructions_closed_under_checker() {
        let s = FiniteSet::new("S", vec![Atom::sym("a"), Atom::sym("b"), Atom::sym("c")]);
        for c in [
            discrete(&s),
            indiscrete(&s),
            opposite(&corpus::rightzero_delooping()),
            product_cat(&corpus::deloop_z2(), &indiscrete(&s)),
            terminal_cat(),
        ] {
            assert!(check_category(&c, &opts()).passed(), "{}", c.name);
        }
    }
}
