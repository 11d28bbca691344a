//! Categories enriched in an internal monoidal category, their functors and
//! natural transformations, 2-categorical operations, underlying category,
//! indiscrete enrichment, and change of enriching base.
//!
//! The enriching structure may be non-strict, so every composite that the
//! axioms and operations require inserts explicit unitor and associator
//! components; there is no normalization-by-strictness shortcut. Composition
//! and identity tables are total; typing violations are reported by the
//! checker rather than raised, so partially wrong data can be audited.

use std::collections::BTreeMap;

use crate::ambient::{equalizer, product, Atom, FiniteMap, FiniteSet};
use crate::error::Error;
use crate::internal_cat::{InternalCategory, InternalFunctor, InternalNat};
use crate::monoidal::{triple_apex, MonoidalFunctorData, MonoidalStructure};
use crate::report::{Axiom, CheckOptions, CheckReport};
use crate::Result;

/// A category enriched in an internal monoidal category: a carrier with hom,
/// composition and identity tables valued in the enriching structure.
#[derive(Debug, Clone)]
pub struct EnrichedCategory {
    pub name: String,
    pub v: MonoidalStructure,
    pub carrier: FiniteSet,
    /// `hom(⟨x0,x1⟩)` is the hom object in the enriching base.
    pub hom: FiniteMap,
    /// `comp(⟨⟨x0,x1⟩,x2⟩) : hom(x1,x2) ⊗ hom(x0,x1) → hom(x0,x2)`.
    pub comp: FiniteMap,
    /// `ident(x) : I → hom(x,x)`.
    pub ident: FiniteMap,
}

impl PartialEq for EnrichedCategory {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
            && self.carrier == other.carrier
            && self.hom == other.hom
            && self.comp == other.comp
            && self.ident == other.ident
    }
}
impl Eq for EnrichedCategory {}

impl EnrichedCategory {
    pub fn new(
        name: impl Into<String>,
        v: MonoidalStructure,
        carrier: FiniteSet,
        hom: FiniteMap,
        comp: FiniteMap,
        ident: FiniteMap,
    ) -> Result<EnrichedCategory> {
        let squares = product(&carrier, &carrier).apex;
        if *hom.dom() != squares || *hom.cod() != v.base.obj {
            return Err(Error::MalformedData(
                "hom must be a table over carrier pairs valued in objects".into(),
            ));
        }
        if *comp.dom() != triple_apex(&carrier) || *comp.cod() != v.base.arr {
            return Err(Error::MalformedData(
                "comp must be a table over carrier triples valued in arrows".into(),
            ));
        }
        if *ident.dom() != carrier || *ident.cod() != v.base.arr {
            return Err(Error::MalformedData(
                "ident must be a table over the carrier valued in arrows".into(),
            ));
        }
        Ok(EnrichedCategory {
            name: name.into(),
            v,
            carrier,
            hom,
            comp,
            ident,
        })
    }

    pub fn hom_at(&self, x0: &Atom, x1: &Atom) -> Atom {
        self.hom.apply(&Atom::pair(x0, x1)).clone()
    }

    pub fn comp_at(&self, x0: &Atom, x1: &Atom, x2: &Atom) -> Atom {
        self.comp.apply(&Atom::triple(x0, x1, x2)).clone()
    }

    pub fn ident_at(&self, x: &Atom) -> Atom {
        self.ident.apply(x).clone()
    }
}

/// Checks typing and the associativity and unit axioms at every tuple.
pub fn check_enriched_category(x: &EnrichedCategory, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&x.name);
    let v = &x.v;
    let xs = &x.carrier;

    let mut typing = Axiom::new("typing", opts);
    for x0 in xs.iter() {
        for x1 in xs.iter() {
            for x2 in xs.iter() {
                let c = x.comp_at(x0, x1, x2);
                let want_src = v.tensor_obj(&x.hom_at(x1, x2), &x.hom_at(x0, x1));
                let want_tgt = x.hom_at(x0, x2);
                if v.src_of(&c) != &want_src || v.tgt_of(&c) != &want_tgt {
                    typing.fail(&[x0, x1, x2]);
                }
            }
        }
    }
    for x0 in xs.iter() {
        let i = x.ident_at(x0);
        if v.src_of(&i) != &v.unit_obj || v.tgt_of(&i) != &x.hom_at(x0, x0) {
            typing.fail(&[x0]);
        }
    }
    report.push(typing);

    let mut assoc = Axiom::new("associativity", opts);
    for x0 in xs.iter() {
        for x1 in xs.iter() {
            for x2 in xs.iter() {
                for x3 in xs.iter() {
                    let h01 = x.hom_at(x0, x1);
                    let h12 = x.hom_at(x1, x2);
                    let h23 = x.hom_at(x2, x3);
                    let lhs = v.compose(
                        &x.comp_at(x0, x1, x3),
                        &v.tensor_arr(&x.comp_at(x1, x2, x3), &v.id_arr(&h01)),
                    );
                    let rhs = v
                        .compose(
                            &v.tensor_arr(&v.id_arr(&h23), &x.comp_at(x0, x1, x2)),
                            &v.assoc_at(&h23, &h12, &h01),
                        )
                        .and_then(|inner| v.compose(&x.comp_at(x0, x2, x3), &inner));
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) if a == b => {}
                        _ => assoc.fail(&[x0, x1, x2, x3]),
                    }
                }
            }
        }
    }
    report.push(assoc);

    let mut left = Axiom::new("left-unit", opts);
    let mut right = Axiom::new("right-unit", opts);
    for x0 in xs.iter() {
        for x1 in xs.iter() {
            let h = x.hom_at(x0, x1);
            let lhs = v.lunit_at(&h);
            let rhs = v.compose(
                &x.comp_at(x0, x1, x1),
                &v.tensor_arr(&x.ident_at(x1), &v.id_arr(&h)),
            );
            match rhs {
                Ok(r) if r == lhs => {}
                _ => left.fail(&[x0, x1]),
            }
            let lhs = v.runit_at(&h);
            let rhs = v.compose(
                &x.comp_at(x0, x0, x1),
                &v.tensor_arr(&v.id_arr(&h), &x.ident_at(x0)),
            );
            match rhs {
                Ok(r) if r == lhs => {}
                _ => right.fail(&[x0, x1]),
            }
        }
    }
    report.push(left);
    report.push(right);

    report
}

/// An enriched functor between categories enriched in the same structure.
#[derive(Debug, Clone)]
pub struct EnrichedFunctor {
    pub name: String,
    pub dom: EnrichedCategory,
    pub cod: EnrichedCategory,
    pub f0: FiniteMap,
    /// `f1(⟨x0,x1⟩) : hom(x0,x1) → hom(f0 x0, f0 x1)`.
    pub f1: FiniteMap,
}

impl PartialEq for EnrichedFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.f0 == other.f0 && self.f1 == other.f1
    }
}
impl Eq for EnrichedFunctor {}

impl EnrichedFunctor {
    pub fn new(
        name: impl Into<String>,
        dom: EnrichedCategory,
        cod: EnrichedCategory,
        f0: FiniteMap,
        f1: FiniteMap,
    ) -> Result<EnrichedFunctor> {
        if dom.v != cod.v {
            return Err(Error::EndpointMismatch(
                "enriched functor endpoints must share the enriching structure".into(),
            ));
        }
        if *f0.dom() != dom.carrier || *f0.cod() != cod.carrier {
            return Err(Error::MalformedData(
                "object component has wrong carriers".into(),
            ));
        }
        if *f1.dom() != product(&dom.carrier, &dom.carrier).apex || *f1.cod() != dom.v.base.arr {
            return Err(Error::MalformedData(
                "morphism component must be a table over carrier pairs valued in arrows".into(),
            ));
        }
        Ok(EnrichedFunctor {
            name: name.into(),
            dom,
            cod,
            f0,
            f1,
        })
    }

    pub fn obj_at(&self, x: &Atom) -> &Atom {
        self.f0.apply(x)
    }

    pub fn arr_at(&self, x0: &Atom, x1: &Atom) -> Atom {
        self.f1.apply(&Atom::pair(x0, x1)).clone()
    }
}

pub fn identity_enriched_functor(x: &EnrichedCategory) -> EnrichedFunctor {
    let f1 = FiniteMap::from_fn(
        &product(&x.carrier, &x.carrier).apex,
        &x.v.base.arr,
        |p| x.v.id_arr(x.hom.apply(p)),
    );
    EnrichedFunctor::new(
        format!("id_{}", x.name),
        x.clone(),
        x.clone(),
        FiniteMap::identity(&x.carrier),
        f1,
    )
    .unwrap()
}

/// `g` after `f`; strictly associative and unital under canonical encoding.
pub fn compose_enriched_functors(g: &EnrichedFunctor, f: &EnrichedFunctor) -> Result<EnrichedFunctor> {
    if f.cod != g.dom {
        return Err(Error::EndpointMismatch(format!(
            "cannot compose enriched functors {} and {}",
            g.name, f.name
        )));
    }
    let v = &f.dom.v;
    let pairs = product(&f.dom.carrier, &f.dom.carrier).apex;
    let mut f1 = BTreeMap::new();
    for p in pairs.iter() {
        let (x0, x1) = p.unpair().unwrap();
        let mid = g.arr_at(f.obj_at(&x0), f.obj_at(&x1));
        f1.insert(p.clone(), v.compose(&mid, &f.arr_at(&x0, &x1))?);
    }
    EnrichedFunctor::new(
        format!("{}∘{}", g.name, f.name),
        f.dom.clone(),
        g.cod.clone(),
        f.f0.then(&g.f0)?,
        FiniteMap::new(pairs, v.base.arr.clone(), f1)?,
    )
}

pub fn check_enriched_functor(f: &EnrichedFunctor, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&f.name);
    let v = &f.dom.v;
    let xs = &f.dom.carrier;

    let mut typing = Axiom::new("typing", opts);
    for x0 in xs.iter() {
        for x1 in xs.iter() {
            let c = f.arr_at(x0, x1);
            let want_src = f.dom.hom_at(x0, x1);
            let want_tgt = f.cod.hom_at(f.obj_at(x0), f.obj_at(x1));
            if v.src_of(&c) != &want_src || v.tgt_of(&c) != &want_tgt {
                typing.fail(&[x0, x1]);
            }
        }
    }
    report.push(typing);

    let mut functoriality = Axiom::new("functoriality", opts);
    for x0 in xs.iter() {
        for x1 in xs.iter() {
            for x2 in xs.iter() {
                let lhs = v.compose(&f.arr_at(x0, x2), &f.dom.comp_at(x0, x1, x2));
                let rhs = v.compose(
                    &f.cod.comp_at(f.obj_at(x0), f.obj_at(x1), f.obj_at(x2)),
                    &v.tensor_arr(&f.arr_at(x1, x2), &f.arr_at(x0, x1)),
                );
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => functoriality.fail(&[x0, x1, x2]),
                }
            }
        }
    }
    report.push(functoriality);

    let mut identity = Axiom::new("identity-preservation", opts);
    for x0 in xs.iter() {
        let lhs = v.compose(&f.arr_at(x0, x0), &f.dom.ident_at(x0));
        let rhs = f.cod.ident_at(f.obj_at(x0));
        match lhs {
            Ok(a) if a == rhs => {}
            _ => identity.fail(&[x0]),
        }
    }
    report.push(identity);

    report
}

/// An enriched natural transformation between parallel enriched functors.
#[derive(Debug, Clone)]
pub struct EnrichedNat {
    pub name: String,
    pub src_f: EnrichedFunctor,
    pub tgt_f: EnrichedFunctor,
    /// `component(x) : I → hom(F0 x, G0 x)`.
    pub component: FiniteMap,
}

impl PartialEq for EnrichedNat {
    fn eq(&self, other: &Self) -> bool {
        self.src_f == other.src_f
            && self.tgt_f == other.tgt_f
            && self.component == other.component
    }
}
impl Eq for EnrichedNat {}

impl EnrichedNat {
    pub fn new(
        name: impl Into<String>,
        src_f: EnrichedFunctor,
        tgt_f: EnrichedFunctor,
        component: FiniteMap,
    ) -> Result<EnrichedNat> {
        if src_f.dom != tgt_f.dom || src_f.cod != tgt_f.cod {
            return Err(Error::EndpointMismatch(
                "enriched transformation needs parallel functors".into(),
            ));
        }
        if *component.dom() != src_f.dom.carrier || *component.cod() != src_f.dom.v.base.arr {
            return Err(Error::MalformedData(
                "component must be a table over the carrier valued in arrows".into(),
            ));
        }
        Ok(EnrichedNat {
            name: name.into(),
            src_f,
            tgt_f,
            component,
        })
    }

    pub fn at(&self, x: &Atom) -> Atom {
        self.component.apply(x).clone()
    }
}

pub fn identity_enriched_nat(f: &EnrichedFunctor) -> EnrichedNat {
    let component = FiniteMap::from_fn(&f.dom.carrier, &f.dom.v.base.arr, |x| {
        f.cod.ident_at(f.obj_at(x))
    });
    EnrichedNat::new(format!("id_{}", f.name), f.clone(), f.clone(), component).unwrap()
}

pub fn check_enriched_nat(n: &EnrichedNat, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&n.name);
    let f = &n.src_f;
    let g = &n.tgt_f;
    let v = &f.dom.v;
    let y = &f.cod;

    let mut typing = Axiom::new("typing", opts);
    for x in f.dom.carrier.iter() {
        let c = n.at(x);
        if v.src_of(&c) != &v.unit_obj || v.tgt_of(&c) != &y.hom_at(f.obj_at(x), g.obj_at(x)) {
            typing.fail(&[x]);
        }
    }
    report.push(typing);

    // Naturality hexagon: both legs start by un-padding the hom object with
    // an inverse unitor, so non-strict structures are handled exactly.
    let mut naturality = Axiom::new("naturality", opts);
    for x0 in f.dom.carrier.iter() {
        for x1 in f.dom.carrier.iter() {
            let h = f.dom.hom_at(x0, x1);
            let lhs = v
                .inverse_of(&v.lunit_at(&h))
                .and_then(|lu| v.compose(&v.tensor_arr(&n.at(x1), &f.arr_at(x0, x1)), &lu))
                .and_then(|inner| {
                    v.compose(
                        &y.comp_at(f.obj_at(x0), f.obj_at(x1), g.obj_at(x1)),
                        &inner,
                    )
                });
            let rhs = v
                .inverse_of(&v.runit_at(&h))
                .and_then(|ru| v.compose(&v.tensor_arr(&g.arr_at(x0, x1), &n.at(x0)), &ru))
                .and_then(|inner| {
                    v.compose(
                        &y.comp_at(f.obj_at(x0), g.obj_at(x0), g.obj_at(x1)),
                        &inner,
                    )
                });
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => naturality.fail(&[x0, x1]),
            }
        }
    }
    report.push(naturality);

    report
}

/// Vertical composition `b` after `a`: tensor the components and compose,
/// entering through the inverse unitor at the unit.
pub fn vcompose_enriched_nats(b: &EnrichedNat, a: &EnrichedNat) -> Result<EnrichedNat> {
    if a.tgt_f != b.src_f {
        return Err(Error::EndpointMismatch(
            "vertical composition needs a matching middle functor".into(),
        ));
    }
    let f = &a.src_f;
    let g = &a.tgt_f;
    let h = &b.tgt_f;
    let v = &f.dom.v;
    let y = &f.cod;
    let unit_split = v.inverse_of(&v.lunit_at(&v.unit_obj))?;
    let component = {
        let mut table = BTreeMap::new();
        for x in f.dom.carrier.iter() {
            let paired = v.compose(&v.tensor_arr(&b.at(x), &a.at(x)), &unit_split)?;
            let total = v.compose(
                &y.comp_at(f.obj_at(x), g.obj_at(x), h.obj_at(x)),
                &paired,
            )?;
            table.insert(x.clone(), total);
        }
        FiniteMap::new(f.dom.carrier.clone(), v.base.arr.clone(), table)?
    };
    EnrichedNat::new(
        format!("{}·{}", b.name, a.name),
        f.clone(),
        h.clone(),
        component,
    )
}

/// Left whiskering: precompose a transformation with a functor into its
/// domain.
pub fn lwhisker(n: &EnrichedNat, l: &EnrichedFunctor) -> Result<EnrichedNat> {
    if l.cod != n.src_f.dom {
        return Err(Error::EndpointMismatch(
            "whiskering functor must land in the transformation's domain".into(),
        ));
    }
    EnrichedNat::new(
        format!("{}⋆{}", n.name, l.name),
        compose_enriched_functors(&n.src_f, l)?,
        compose_enriched_functors(&n.tgt_f, l)?,
        l.f0.then(&n.component)?,
    )
}

/// Right whiskering: push a transformation through a functor out of its
/// codomain.
pub fn rwhisker(r: &EnrichedFunctor, n: &EnrichedNat) -> Result<EnrichedNat> {
    if n.src_f.cod != r.dom {
        return Err(Error::EndpointMismatch(
            "whiskering functor must start at the transformation's codomain".into(),
        ));
    }
    let v = &r.dom.v;
    let mut table = BTreeMap::new();
    for x in n.src_f.dom.carrier.iter() {
        let through = r.arr_at(n.src_f.obj_at(x), n.tgt_f.obj_at(x));
        table.insert(x.clone(), v.compose(&through, &n.at(x))?);
    }
    EnrichedNat::new(
        format!("{}⋆{}", r.name, n.name),
        compose_enriched_functors(r, &n.src_f)?,
        compose_enriched_functors(r, &n.tgt_f)?,
        FiniteMap::new(
            n.src_f.dom.carrier.clone(),
            v.base.arr.clone(),
            table,
        )?,
    )
}

/// The underlying internal category: arrows are elements `I → hom(x0,x1)`,
/// carved out of the candidate carrier by an equalizer.
pub fn underlying_category(x: &EnrichedCategory) -> Result<InternalCategory> {
    let v = &x.v;
    let pairs = product(&x.carrier, &x.carrier).apex;
    let candidates = product(&pairs, &v.base.arr).apex;
    let v0_pairs = product(&v.base.obj, &v.base.obj).apex;
    let observed = FiniteMap::from_fn(&candidates, &v0_pairs, |t| {
        let (_, f) = t.unpair().unwrap();
        Atom::pair(v.src_of(&f), v.tgt_of(&f))
    });
    let required = FiniteMap::from_fn(&candidates, &v0_pairs, |t| {
        let (p, _) = t.unpair().unwrap();
        Atom::pair(&v.unit_obj, x.hom.apply(&p))
    });
    let arr = equalizer(&observed, &required)?
        .apex
        .renamed(format!("U({})₁", x.name));

    let src = FiniteMap::from_fn(&arr, &x.carrier, |t| t.untriple().unwrap().0);
    let tgt = FiniteMap::from_fn(&arr, &x.carrier, |t| t.untriple().unwrap().1);
    let ids = FiniteMap::from_fn(&x.carrier, &arr, |a| {
        Atom::pair(&Atom::pair(a, a), &x.ident_at(a))
    });
    let apex = crate::ambient::pullback(&src, &tgt)?.apex;
    let unit_split = v.inverse_of(&v.lunit_at(&v.unit_obj))?;
    let mut comp_table = BTreeMap::new();
    for key in apex.iter() {
        let (gt, ft) = key.unpair().unwrap();
        let (x1a, x2, g) = gt.untriple().unwrap();
        let (x0, _x1b, f) = ft.untriple().unwrap();
        let paired = v.compose(&v.tensor_arr(&g, &f), &unit_split)?;
        let value = v.compose(&x.comp_at(&x0, &x1a, &x2), &paired)?;
        comp_table.insert(key.clone(), Atom::pair(&Atom::pair(&x0, &x2), &value));
    }
    let comp = FiniteMap::new(apex, arr.clone(), comp_table)?;
    InternalCategory::new(format!("U({})", x.name), x.carrier.clone(), arr, src, tgt, ids, comp)
}

/// The underlying internal functor of an enriched functor.
pub fn underlying_functor(f: &EnrichedFunctor) -> Result<InternalFunctor> {
    let dom = underlying_category(&f.dom)?;
    let cod = underlying_category(&f.cod)?;
    let v = &f.dom.v;
    let f1 = {
        let mut table = BTreeMap::new();
        for t in dom.arr.iter() {
            let (x0, x1, g) = t.untriple().unwrap();
            let image = v.compose(&f.arr_at(&x0, &x1), &g)?;
            table.insert(
                t.clone(),
                Atom::pair(&Atom::pair(f.obj_at(&x0), f.obj_at(&x1)), &image),
            );
        }
        FiniteMap::new(dom.arr.clone(), cod.arr.clone(), table)?
    };
    InternalFunctor::new(format!("U({})", f.name), dom, cod, f.f0.clone(), f1)
}

/// The underlying internal natural transformation.
pub fn underlying_nat(n: &EnrichedNat) -> Result<InternalNat> {
    let src_f = underlying_functor(&n.src_f)?;
    let tgt_f = underlying_functor(&n.tgt_f)?;
    let component = FiniteMap::from_fn(&src_f.dom.obj, &src_f.cod.arr, |x| {
        Atom::pair(
            &Atom::pair(n.src_f.obj_at(x), n.tgt_f.obj_at(x)),
            &n.at(x),
        )
    });
    InternalNat::new(format!("U({})", n.name), src_f, tgt_f, component)
}

/// The indiscrete enriched category: every hom object is the unit.
pub fn indiscrete_enriched(s: &FiniteSet, v: &MonoidalStructure) -> Result<EnrichedCategory> {
    let pairs = product(s, s).apex;
    let hom = FiniteMap::constant(&pairs, &v.base.obj, &v.unit_obj);
    let comp = FiniteMap::constant(
        &triple_apex(s),
        &v.base.arr,
        &v.lunit_at(&v.unit_obj),
    );
    let ident = FiniteMap::constant(s, &v.base.arr, &v.id_arr(&v.unit_obj));
    EnrichedCategory::new(format!("Ind({})", s.name()), v.clone(), s.clone(), hom, comp, ident)
}

/// The indiscrete enriched functor induced by a carrier map.
pub fn indiscrete_enriched_functor(
    f: &FiniteMap,
    v: &MonoidalStructure,
) -> Result<EnrichedFunctor> {
    let dom = indiscrete_enriched(f.dom(), v)?;
    let cod = indiscrete_enriched(f.cod(), v)?;
    let f1 = FiniteMap::constant(
        &product(f.dom(), f.dom()).apex,
        &v.base.arr,
        &v.id_arr(&v.unit_obj),
    );
    EnrichedFunctor::new(format!("Ind({:?})", f), dom, cod, f.clone(), f1)
}

/// Change of enriching base along a monoidal functor: hom, composition and
/// identity are pushed through the functor, with its coherence isomorphisms
/// inserted so the axioms transport.
pub fn change_enriching_base(
    d: &MonoidalFunctorData,
    x: &EnrichedCategory,
) -> Result<EnrichedCategory> {
    if x.v != d.dom_v {
        return Err(Error::EndpointMismatch(
            "category is not enriched in the functor's domain".into(),
        ));
    }
    let w = &d.cod_v;
    let hom = x.hom.then(&d.f.f0)?;
    let mut comp_table = BTreeMap::new();
    for key in x.comp.dom().iter() {
        let (x0, x1, x2) = key.untriple().unwrap();
        let glue = d.mu_at(&x.hom_at(&x1, &x2), &x.hom_at(&x0, &x1));
        let value = w.compose(d.f.apply_arr(&x.comp_at(&x0, &x1, &x2)), &glue)?;
        comp_table.insert(key.clone(), value);
    }
    let comp = FiniteMap::new(x.comp.dom().clone(), w.base.arr.clone(), comp_table)?;
    let mut ident_table = BTreeMap::new();
    for x0 in x.carrier.iter() {
        let value = w.compose(d.f.apply_arr(&x.ident_at(x0)), &d.eps)?;
        ident_table.insert(x0.clone(), value);
    }
    let ident = FiniteMap::new(x.carrier.clone(), w.base.arr.clone(), ident_table)?;
    EnrichedCategory::new(
        format!("{}•({})", d.name, x.name),
        w.clone(),
        x.carrier.clone(),
        hom,
        comp,
        ident,
    )
}

/// Change of base on enriched functors.
pub fn change_base_functor(
    d: &MonoidalFunctorData,
    f: &EnrichedFunctor,
) -> Result<EnrichedFunctor> {
    EnrichedFunctor::new(
        format!("{}•({})", d.name, f.name),
        change_enriching_base(d, &f.dom)?,
        change_enriching_base(d, &f.cod)?,
        f.f0.clone(),
        f.f1.then(&d.f.f1)?,
    )
}

/// Change of base on enriched natural transformations.
pub fn change_base_nat(d: &MonoidalFunctorData, n: &EnrichedNat) -> Result<EnrichedNat> {
    let w = &d.cod_v;
    let src_f = change_base_functor(d, &n.src_f)?;
    let tgt_f = change_base_functor(d, &n.tgt_f)?;
    let mut table = BTreeMap::new();
    for x in n.src_f.dom.carrier.iter() {
        table.insert(x.clone(), w.compose(d.f.apply_arr(&n.at(x)), &d.eps)?);
    }
    EnrichedNat::new(
        format!("{}•({})", d.name, n.name),
        src_f,
        tgt_f,
        FiniteMap::new(n.src_f.dom.carrier.clone(), w.base.arr.clone(), table)?,
    )
}
