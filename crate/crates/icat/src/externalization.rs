//! Externalization fibers, reindexing, monoidal fiber structure, Grothendieck
//! totals over finite index families, the small-category data coincidence,
//! enriched fibers with their reindexing, and the bar construction that
//! recovers an enriched functor from its fiber data.
//!
//! Fiber objects are families: maps from the index carrier into the object
//! carrier, encoded as value tuples in the index's canonical element order.
//! Fiber arrows are sections of the pulled-back arrow carrier, encoded the
//! same way. Everything downstream reuses the plain internal-category and
//! monoidal checkers on these materialized categories.

use std::collections::BTreeMap;

use crate::ambient::{product, terminal, Atom, FiniteMap, FiniteSet};
use crate::enriched::{EnrichedCategory, EnrichedFunctor};
use crate::error::Error;
use crate::internal_cat::{InternalCategory, InternalFunctor, InternalNat};
use crate::monoidal::{triple_apex, MonoidalFunctorData, MonoidalStructure};
use crate::report::{Axiom, CheckOptions, CheckReport};
use crate::Result;

/// Encodes a family `index → values` as a tuple atom over the index's
/// canonical element order.
pub fn encode_family(index: &FiniteSet, value_at: impl Fn(&Atom) -> Atom) -> Atom {
    let values: Vec<Atom> = index.iter().map(value_at).collect();
    Atom::list(&values)
}

/// Decodes a family atom back into a map out of the index.
pub fn decode_family(index: &FiniteSet, cod: &FiniteSet, atom: &Atom) -> Result<FiniteMap> {
    let values = atom
        .unlist()
        .ok_or_else(|| Error::MalformedData(format!("{atom} is not a family atom")))?;
    if values.len() != index.len() {
        return Err(Error::MalformedData(format!(
            "family {atom} has {} entries, index has {}",
            values.len(),
            index.len()
        )));
    }
    let table: BTreeMap<Atom, Atom> = index.iter().cloned().zip(values).collect();
    FiniteMap::new(index.clone(), cod.clone(), table)
}

/// A fiber of the externalization: the ordinary category of families of
/// objects and arrows of an internal category over a fixed index carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub base: InternalCategory,
    pub index: FiniteSet,
    /// The materialized category: objects are family atoms, arrows are
    /// section atoms.
    pub cat: InternalCategory,
}

/// Builds the fiber of an internal category over an index carrier. Objects
/// are all families `index → obj`; an arrow is a family of base arrows whose
/// sources and targets match its endpoints pointwise.
pub fn fiber(a: &InternalCategory, index: &FiniteSet) -> Fiber {
    let objs: Vec<Atom> = index
        .maps_to(&a.obj)
        .iter()
        .map(|m| encode_family(index, |i| m.apply(i).clone()))
        .collect();
    let obj = FiniteSet::new(format!("⟦{}⟧[{}]₀", a.name, index.name()), objs);

    // Sections: pointwise tuples of base arrows. A section's endpoints are
    // derivable, so one carrier holds all of them without collision.
    let mut stack: Vec<Vec<Atom>> = vec![Vec::new()];
    for _ in index.iter() {
        let mut next = Vec::new();
        for prefix in &stack {
            for f in a.arr.iter() {
                let mut s = prefix.clone();
                s.push(f.clone());
                next.push(s);
            }
        }
        stack = next;
    }
    let sections: Vec<Atom> = stack.iter().map(|s| Atom::list(s)).collect();
    let arr = FiniteSet::new(format!("⟦{}⟧[{}]₁", a.name, index.name()), sections);

    let pointwise = |mapper: &FiniteMap, s: &Atom| {
        let values = s.unlist().unwrap();
        let mapped: Vec<Atom> = values.iter().map(|f| mapper.apply(f).clone()).collect();
        Atom::list(&mapped)
    };
    let src = FiniteMap::from_fn(&arr, &obj, |s| pointwise(&a.src, s));
    let tgt = FiniteMap::from_fn(&arr, &obj, |s| pointwise(&a.tgt, s));
    let ids = FiniteMap::from_fn(&obj, &arr, |m| pointwise(&a.ids, m));
    let apex = crate::ambient::pullback(&src, &tgt).unwrap().apex;
    let comp = FiniteMap::from_fn(&apex, &arr, |key| {
        let (g, f) = key.unpair().unwrap();
        let gs = g.unlist().unwrap();
        let fs = f.unlist().unwrap();
        let composed: Vec<Atom> = gs
            .iter()
            .zip(fs.iter())
            .map(|(gi, fi)| a.compose(gi, fi).unwrap())
            .collect();
        Atom::list(&composed)
    });
    let cat = InternalCategory::new(
        format!("⟦{}⟧[{}]", a.name, index.name()),
        obj,
        arr,
        src,
        tgt,
        ids,
        comp,
    )
    .unwrap();
    Fiber {
        base: a.clone(),
        index: index.clone(),
        cat,
    }
}

/// Reindexing along `u : X′ → X`: precomposition of families, a strict
/// functor between fibers.
pub fn reindex(u: &FiniteMap, fib: &Fiber) -> Result<InternalFunctor> {
    if *u.cod() != fib.index {
        return Err(Error::DomainMismatch(format!(
            "reindexing map must land in the fiber index {}",
            fib.index.name()
        )));
    }
    let target = fiber(&fib.base, u.dom());
    let positions: Vec<usize> = u
        .dom()
        .iter()
        .map(|i| {
            fib.index
                .elements()
                .binary_search(u.apply(i))
                .expect("reindexing image outside the index")
        })
        .collect();
    let reindex_atom = |m: &Atom| {
        let values = m.unlist().unwrap();
        let picked: Vec<Atom> = positions.iter().map(|&p| values[p].clone()).collect();
        Atom::list(&picked)
    };
    let f0 = FiniteMap::from_fn(&fib.cat.obj, &target.cat.obj, reindex_atom);
    let f1 = FiniteMap::from_fn(&fib.cat.arr, &target.cat.arr, reindex_atom);
    InternalFunctor::new(
        format!("{}*", u.dom().name()),
        fib.cat.clone(),
        target.cat.clone(),
        f0,
        f1,
    )
}

/// The fiberwise monoidal structure induced pointwise by an internal
/// monoidal category.
pub fn fiber_monoidal(v: &MonoidalStructure, index: &FiniteSet) -> MonoidalStructure {
    let fib = fiber(&v.base, index);
    let base = fib.cat;
    let squared = crate::internal_cat::product_cat(&base, &base);
    let zip_with = |op: &dyn Fn(&Atom, &Atom) -> Atom, p: &Atom| {
        let (a, b) = p.unpair().unwrap();
        let xs = a.unlist().unwrap();
        let ys = b.unlist().unwrap();
        let zipped: Vec<Atom> = xs.iter().zip(ys.iter()).map(|(x, y)| op(x, y)).collect();
        Atom::list(&zipped)
    };
    let f0 = FiniteMap::from_fn(&squared.obj, &base.obj, |p| {
        zip_with(&|x, y| v.tensor_obj(x, y), p)
    });
    let f1 = FiniteMap::from_fn(&squared.arr, &base.arr, |p| {
        zip_with(&|x, y| v.tensor_arr(x, y), p)
    });
    let tensor = InternalFunctor::new(
        format!("⊗⟦{}⟧[{}]", v.name, index.name()),
        squared,
        base.clone(),
        f0,
        f1,
    )
    .unwrap();
    let unit_obj = encode_family(index, |_| v.unit_obj.clone());
    let assoc = FiniteMap::from_fn(&triple_apex(&base.obj), &base.arr, |t| {
        let (a, b, c) = t.untriple().unwrap();
        let xs = a.unlist().unwrap();
        let ys = b.unlist().unwrap();
        let zs = c.unlist().unwrap();
        let comps: Vec<Atom> = xs
            .iter()
            .zip(ys.iter())
            .zip(zs.iter())
            .map(|((x, y), z)| v.assoc_at(x, y, z))
            .collect();
        Atom::list(&comps)
    });
    let unitor = |table: &FiniteMap, m: &Atom| {
        let values = m.unlist().unwrap();
        let comps: Vec<Atom> = values.iter().map(|x| table.apply(x).clone()).collect();
        Atom::list(&comps)
    };
    let lunit = FiniteMap::from_fn(&base.obj, &base.arr, |m| unitor(&v.lunit, m));
    let runit = FiniteMap::from_fn(&base.obj, &base.arr, |m| unitor(&v.runit, m));
    MonoidalStructure::new(
        format!("⟦{}⟧[{}]", v.name, index.name()),
        base,
        tensor,
        unit_obj,
        assoc,
        lunit,
        runit,
    )
    .unwrap()
}

/// The monoidal reindexing functor between fiber structures; its coherence
/// data are identities, which is the strictness content of reindexing.
pub fn fiber_reindex_monoidal(
    v: &MonoidalStructure,
    u: &FiniteMap,
) -> Result<MonoidalFunctorData> {
    let dom_v = fiber_monoidal(v, u.cod());
    let cod_v = fiber_monoidal(v, u.dom());
    let carrier = reindex(u, &fiber(&v.base, u.cod()))?;
    let pairs = product(&dom_v.base.obj, &dom_v.base.obj).apex;
    let mu = FiniteMap::from_fn(&pairs, &cod_v.base.arr, |p| {
        let (a, b) = p.unpair().unwrap();
        let image = carrier.apply_obj(&dom_v.tensor_obj(&a, &b)).clone();
        cod_v.id_arr(&image)
    });
    let eps = cod_v.id_arr(&cod_v.unit_obj);
    MonoidalFunctorData::new(
        format!("{}*", u.dom().name()),
        dom_v,
        cod_v,
        carrier,
        eps,
        mu,
    )
}

/// The enriched fiber of an enriched category over an index carrier: an
/// ordinary enriched category over the fiberwise monoidal structure, with
/// pointwise hom, composition and identity tables.
pub fn enriched_fiber(x: &EnrichedCategory, index: &FiniteSet) -> EnrichedCategory {
    let v = fiber_monoidal(&x.v, index);
    let carrier = FiniteSet::new(
        format!("⟦{}⟧[{}]₀", x.name, index.name()),
        index
            .maps_to(&x.carrier)
            .iter()
            .map(|m| encode_family(index, |i| m.apply(i).clone()))
            .collect(),
    );
    let values = |m: &Atom| m.unlist().unwrap();
    let hom = FiniteMap::from_fn(&product(&carrier, &carrier).apex, &v.base.obj, |p| {
        let (m0, m1) = p.unpair().unwrap();
        let (v0, v1) = (values(&m0), values(&m1));
        let homs: Vec<Atom> = v0
            .iter()
            .zip(v1.iter())
            .map(|(a, b)| x.hom_at(a, b))
            .collect();
        Atom::list(&homs)
    });
    let comp = FiniteMap::from_fn(&triple_apex(&carrier), &v.base.arr, |t| {
        let (m0, m1, m2) = t.untriple().unwrap();
        let (v0, v1, v2) = (values(&m0), values(&m1), values(&m2));
        let comps: Vec<Atom> = v0
            .iter()
            .zip(v1.iter())
            .zip(v2.iter())
            .map(|((a, b), c)| x.comp_at(a, b, c))
            .collect();
        Atom::list(&comps)
    });
    let ident = FiniteMap::from_fn(&carrier, &v.base.arr, |m| {
        let idents: Vec<Atom> = values(m).iter().map(|a| x.ident_at(a)).collect();
        Atom::list(&idents)
    });
    EnrichedCategory::new(
        format!("⟦{}⟧[{}]", x.name, index.name()),
        v,
        carrier,
        hom,
        comp,
        ident,
    )
    .unwrap()
}

/// Enriched reindexing along `u : I → J`: the domain is the J-fiber carried
/// over the monoidal reindexing functor, and the hom components are
/// identities, which witnesses full faithfulness structurally.
pub fn enriched_reindex(u: &FiniteMap, x: &EnrichedCategory) -> Result<EnrichedFunctor> {
    let mon = fiber_reindex_monoidal(&x.v, u)?;
    let dom = crate::enriched::change_enriching_base(&mon, &enriched_fiber(x, u.cod()))?;
    let cod = enriched_fiber(x, u.dom());
    let positions: Vec<usize> = u
        .dom()
        .iter()
        .map(|i| {
            u.cod()
                .elements()
                .binary_search(u.apply(i))
                .expect("reindexing image outside the index")
        })
        .collect();
    let reindex_atom = move |m: &Atom| {
        let values = m.unlist().unwrap();
        let picked: Vec<Atom> = positions.iter().map(|&p| values[p].clone()).collect();
        Atom::list(&picked)
    };
    let f0 = FiniteMap::from_fn(&dom.carrier, &cod.carrier, reindex_atom);
    let hom = dom.hom.clone();
    let f1 = FiniteMap::from_fn(&product(&dom.carrier, &dom.carrier).apex, &cod.v.base.arr, {
        let v = cod.v.clone();
        move |p| v.id_arr(hom.apply(p))
    });
    EnrichedFunctor::new(format!("{}*", u.dom().name()), dom, cod, f0, f1)
}

/// Externalizes an internal functor to a functor between fibers.
pub fn externalize_functor(f: &InternalFunctor, index: &FiniteSet) -> InternalFunctor {
    let dom = fiber(&f.dom, index);
    let cod = fiber(&f.cod, index);
    let push = |mapper: &FiniteMap, m: &Atom| {
        let values = m.unlist().unwrap();
        let mapped: Vec<Atom> = values.iter().map(|a| mapper.apply(a).clone()).collect();
        Atom::list(&mapped)
    };
    let f0 = FiniteMap::from_fn(&dom.cat.obj, &cod.cat.obj, |m| push(&f.f0, m));
    let f1 = FiniteMap::from_fn(&dom.cat.arr, &cod.cat.arr, |m| push(&f.f1, m));
    InternalFunctor::new(
        format!("⟦{}⟧[{}]", f.name, index.name()),
        dom.cat,
        cod.cat,
        f0,
        f1,
    )
    .unwrap()
}

/// Externalizes an internal natural transformation fiberwise.
pub fn externalize_nat(n: &InternalNat, index: &FiniteSet) -> InternalNat {
    let src_f = externalize_functor(&n.src_f, index);
    let tgt_f = externalize_functor(&n.tgt_f, index);
    let component = FiniteMap::from_fn(&src_f.dom.obj, &src_f.cod.arr, |m| {
        let values = m.unlist().unwrap();
        let comps: Vec<Atom> = values.iter().map(|a| n.at(a).clone()).collect();
        Atom::list(&comps)
    });
    InternalNat::new(
        format!("⟦{}⟧[{}]", n.name, index.name()),
        src_f,
        tgt_f,
        component,
    )
    .unwrap()
}

/// Externalizes an enriched functor to a functor between enriched fibers.
pub fn externalize_enriched_functor(f: &EnrichedFunctor, index: &FiniteSet) -> EnrichedFunctor {
    let dom = enriched_fiber(&f.dom, index);
    let cod = enriched_fiber(&f.cod, index);
    let f0 = FiniteMap::from_fn(&dom.carrier, &cod.carrier, |m| {
        let values = m.unlist().unwrap();
        let mapped: Vec<Atom> = values.iter().map(|a| f.obj_at(a).clone()).collect();
        Atom::list(&mapped)
    });
    let f1 = FiniteMap::from_fn(
        &product(&dom.carrier, &dom.carrier).apex,
        &dom.v.base.arr,
        |p| {
            let (m0, m1) = p.unpair().unwrap();
            let v0 = m0.unlist().unwrap();
            let v1 = m1.unlist().unwrap();
            let comps: Vec<Atom> = v0
                .iter()
                .zip(v1.iter())
                .map(|(a, b)| f.arr_at(a, b))
                .collect();
            Atom::list(&comps)
        },
    );
    EnrichedFunctor::new(format!("⟦{}⟧[{}]", f.name, index.name()), dom, cod, f0, f1).unwrap()
}

/// Re-reads an enriched category's tables as the data of a small category
/// over the externalized monoidal structure and confirms they coincide: the
/// hom table is an object of the fiber over the squared carrier, and the
/// identity and composition tables are correctly typed sections. Witnesses
/// agree with the enriched checker's typing family, so a mutation trips both
/// in the same place.
pub fn small_coincidence_check(x: &EnrichedCategory, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&x.name);
    let v = &x.v;
    let squared = product(&x.carrier, &x.carrier).apex;

    // Byte-for-byte coincidence: push the tables through the family codecs
    // and compare with the originals.
    let mut coincide = Axiom::new("data-coincidence", opts);
    let hom_as_object = encode_family(&squared, |p| x.hom.apply(p).clone());
    let fiber_v0 = fiber(&v.base, &squared);
    if !fiber_v0.cat.obj.contains(&hom_as_object) {
        coincide.fail_note(&[&hom_as_object], "hom family is not a fiber object");
    } else {
        match decode_family(&squared, &v.base.obj, &hom_as_object) {
            Ok(decoded) if decoded == x.hom => {}
            _ => coincide.fail_note(&[&hom_as_object], "hom table changed under re-reading"),
        }
    }
    let ident_as_section = encode_family(&x.carrier, |a| x.ident.apply(a).clone());
    match decode_family(&x.carrier, &v.base.arr, &ident_as_section) {
        Ok(decoded) if decoded == x.ident => {}
        _ => coincide.fail_note(&[&ident_as_section], "identity table changed under re-reading"),
    }
    let triples = triple_apex(&x.carrier);
    let comp_as_section = encode_family(&triples, |t| x.comp.apply(t).clone());
    match decode_family(&triples, &v.base.arr, &comp_as_section) {
        Ok(decoded) if decoded == x.comp => {}
        _ => coincide.fail_note(&[&comp_as_section], "composition table changed under re-reading"),
    }
    report.push(coincide);

    // Section typing, in the same order as the enriched checker's typing
    // family so witnesses match.
    let mut typing = Axiom::new("typing", opts);
    for x0 in x.carrier.iter() {
        for x1 in x.carrier.iter() {
            for x2 in x.carrier.iter() {
                let c = x.comp_at(x0, x1, x2);
                let want_src = v.tensor_obj(&x.hom_at(x1, x2), &x.hom_at(x0, x1));
                let want_tgt = x.hom_at(x0, x2);
                if v.src_of(&c) != &want_src || v.tgt_of(&c) != &want_tgt {
                    typing.fail(&[x0, x1, x2]);
                }
            }
        }
    }
    for x0 in x.carrier.iter() {
        let i = x.ident_at(x0);
        if v.src_of(&i) != &v.unit_obj || v.tgt_of(&i) != &x.hom_at(x0, x0) {
            typing.fail(&[x0]);
        }
    }
    report.push(typing);

    report
}

/// Builds the two sides of the underlying/externalization square over one
/// index and exhibits their isomorphism: the underlying category of the
/// enriched fiber against the fiber of the underlying category.
pub fn underlying_commute_check(
    x: &EnrichedCategory,
    index: &FiniteSet,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("U⟦{}⟧[{}]", x.name, index.name()));
    let lhs = crate::enriched::underlying_category(&enriched_fiber(x, index))?;
    let u = crate::enriched::underlying_category(x)?;
    let rhs = fiber(&u, index).cat;

    // Objects agree on the nose; arrows repackage componentwise:
    // ⟨⟨m0,m1⟩,(f…)⟩ on the left against (⟨⟨x0,x1⟩,f⟩…) on the right.
    let forward_arrow = |a: &Atom| -> Atom {
        let (pair, section) = a.unpair().unwrap();
        let (m0, m1) = pair.unpair().unwrap();
        let v0 = m0.unlist().unwrap();
        let v1 = m1.unlist().unwrap();
        let fs = section.unlist().unwrap();
        let entries: Vec<Atom> = v0
            .iter()
            .zip(v1.iter())
            .zip(fs.iter())
            .map(|((a0, a1), f)| Atom::pair(&Atom::pair(a0, a1), f))
            .collect();
        Atom::list(&entries)
    };
    let backward_arrow = |a: &Atom| -> Atom {
        let entries = a.unlist().unwrap();
        let mut x0s = Vec::new();
        let mut x1s = Vec::new();
        let mut fs = Vec::new();
        for e in &entries {
            let (pair, f) = e.unpair().unwrap();
            let (a0, a1) = pair.unpair().unwrap();
            x0s.push(a0);
            x1s.push(a1);
            fs.push(f);
        }
        Atom::pair(
            &Atom::pair(&Atom::list(&x0s), &Atom::list(&x1s)),
            &Atom::list(&fs),
        )
    };

    let mut iso = Axiom::new("isomorphism", opts);
    if lhs.obj != rhs.obj {
        iso.fail_note(&[], "object carriers differ");
        report.push(iso);
        return Ok(report);
    }
    let forward = InternalFunctor::new(
        "to-fiber",
        lhs.clone(),
        rhs.clone(),
        FiniteMap::identity(&lhs.obj),
        FiniteMap::from_fn(&lhs.arr, &rhs.arr, forward_arrow),
    );
    let backward = InternalFunctor::new(
        "from-fiber",
        rhs.clone(),
        lhs.clone(),
        FiniteMap::identity(&rhs.obj),
        FiniteMap::from_fn(&rhs.arr, &lhs.arr, backward_arrow),
    );
    match (forward, backward) {
        (Ok(fwd), Ok(bwd)) => {
            if !crate::internal_cat::check_functor(&fwd, opts).passed() {
                iso.fail_note(&[], "forward comparison is not a functor");
            }
            if !crate::internal_cat::check_functor(&bwd, opts).passed() {
                iso.fail_note(&[], "backward comparison is not a functor");
            }
            let round1 = crate::internal_cat::compose_functors(&bwd, &fwd).unwrap();
            let round2 = crate::internal_cat::compose_functors(&fwd, &bwd).unwrap();
            if !round1.same_tables(&crate::internal_cat::identity_functor(&lhs))
                || !round2.same_tables(&crate::internal_cat::identity_functor(&rhs))
            {
                iso.fail_note(&[], "comparisons do not compose to identities");
            }
        }
        _ => iso.fail_note(&[], "arrow repackaging leaves the carriers"),
    }
    report.push(iso);
    Ok(report)
}

/// An arrow of the index category of a Grothendieck total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexArrow {
    pub dom: usize,
    pub cod: usize,
    pub map: FiniteMap,
}

/// An object of a Grothendieck total: a family over one index member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalObject {
    pub pos: usize,
    pub map: FiniteMap,
}

impl TotalObject {
    pub fn encode(&self) -> Atom {
        Atom::pair(
            &Atom::sym(format!("i{}", self.pos)),
            &encode_family(self.map.dom(), |i| self.map.apply(i).clone()),
        )
    }
}

/// An arrow of a Grothendieck total: an index arrow together with a family
/// of base arrows over its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalArrow {
    pub dom: TotalObject,
    pub cod: TotalObject,
    pub idx: usize,
    pub section: FiniteMap,
}

impl TotalArrow {
    pub fn encode(&self) -> Atom {
        Atom::list(&[
            self.dom.encode(),
            self.cod.encode(),
            Atom::sym(format!("u{}", self.idx)),
            encode_family(self.section.dom(), |i| self.section.apply(i).clone()),
        ])
    }
}

/// The total category of an internal category over an explicit finite index
/// family. The index category is the composition closure of the supplied
/// connecting maps together with identities.
#[derive(Debug, Clone)]
pub struct TotalCategory {
    pub name: String,
    pub base: InternalCategory,
    pub family: Vec<FiniteSet>,
    pub index_arrows: Vec<IndexArrow>,
}

/// Builds a Grothendieck total. The family must be nonempty and every
/// connecting map must run between family members.
pub fn grothendieck(
    base: &InternalCategory,
    family: &[FiniteSet],
    connecting: &[FiniteMap],
) -> Result<TotalCategory> {
    if family.is_empty() {
        return Err(Error::MalformedFamily("family must be nonempty".into()));
    }
    let position = |s: &FiniteSet| family.iter().position(|m| m == s);
    let mut arrows: Vec<IndexArrow> = Vec::new();
    for (pos, member) in family.iter().enumerate() {
        arrows.push(IndexArrow {
            dom: pos,
            cod: pos,
            map: FiniteMap::identity(member),
        });
    }
    for u in connecting {
        let dom = position(u.dom()).ok_or_else(|| {
            Error::MalformedFamily(format!(
                "map domain {} is not in the family",
                u.dom().name()
            ))
        })?;
        let cod = position(u.cod()).ok_or_else(|| {
            Error::MalformedFamily(format!(
                "map codomain {} is not in the family",
                u.cod().name()
            ))
        })?;
        let candidate = IndexArrow {
            dom,
            cod,
            map: u.clone(),
        };
        if !arrows.contains(&candidate) {
            arrows.push(candidate);
        }
    }
    close_under_composition(&mut arrows);
    Ok(TotalCategory {
        name: format!("∫⟦{}⟧", base.name),
        base: base.clone(),
        family: family.to_vec(),
        index_arrows: arrows,
    })
}

fn close_under_composition(arrows: &mut Vec<IndexArrow>) {
    loop {
        let mut added = false;
        let snapshot = arrows.clone();
        for f in &snapshot {
            for g in &snapshot {
                if f.cod == g.dom {
                    let composed = IndexArrow {
                        dom: f.dom,
                        cod: g.cod,
                        map: f.map.then(&g.map).unwrap(),
                    };
                    if !arrows.contains(&composed) {
                        arrows.push(composed);
                        added = true;
                    }
                }
            }
        }
        if !added {
            return;
        }
    }
}

impl TotalCategory {
    pub fn objects(&self) -> Vec<TotalObject> {
        let mut out = Vec::new();
        for (pos, member) in self.family.iter().enumerate() {
            for map in member.maps_to(&self.base.obj) {
                out.push(TotalObject { pos, map });
            }
        }
        out
    }

    /// Families of base arrows from `x` pointwise into `reindexed_cod`.
    fn sections(&self, x: &FiniteMap, reindexed_cod: &FiniteMap) -> Vec<FiniteMap> {
        let index = x.dom().clone();
        let mut stack: Vec<Vec<(Atom, Atom)>> = vec![Vec::new()];
        for i in index.iter() {
            let mut next = Vec::new();
            for prefix in &stack {
                for f in self.base.hom(x.apply(i), reindexed_cod.apply(i)) {
                    let mut s = prefix.clone();
                    s.push((i.clone(), f.clone()));
                    next.push(s);
                }
            }
            stack = next;
        }
        stack
            .into_iter()
            .map(|entries| {
                FiniteMap::new(
                    index.clone(),
                    self.base.arr.clone(),
                    entries.into_iter().collect(),
                )
                .unwrap()
            })
            .collect()
    }

    /// All arrows into `cod` lying over a given index arrow.
    pub fn arrows_over_into(&self, idx: usize, cod: &TotalObject) -> Vec<TotalArrow> {
        let u = &self.index_arrows[idx];
        assert_eq!(u.cod, cod.pos, "index arrow does not end at the object");
        let reindexed = u.map.then(&cod.map).unwrap();
        let mut out = Vec::new();
        for x in self.family[u.dom].maps_to(&self.base.obj) {
            for section in self.sections(&x, &reindexed) {
                out.push(TotalArrow {
                    dom: TotalObject {
                        pos: u.dom,
                        map: x.clone(),
                    },
                    cod: cod.clone(),
                    idx,
                    section,
                });
            }
        }
        out
    }

    pub fn arrows(&self) -> Vec<TotalArrow> {
        let mut out = Vec::new();
        for (idx, u) in self.index_arrows.iter().enumerate() {
            for y in self.family[u.cod].maps_to(&self.base.obj) {
                let cod = TotalObject { pos: u.cod, map: y };
                out.extend(self.arrows_over_into(idx, &cod));
            }
        }
        out
    }

    pub fn identity(&self, obj: &TotalObject) -> TotalArrow {
        let idx = self
            .index_arrow_position(obj.pos, obj.pos, &FiniteMap::identity(&self.family[obj.pos]))
            .expect("identities are always present");
        let section = FiniteMap::from_fn(&self.family[obj.pos], &self.base.arr, |i| {
            self.base.id_of(obj.map.apply(i)).clone()
        });
        TotalArrow {
            dom: obj.clone(),
            cod: obj.clone(),
            idx,
            section,
        }
    }

    pub fn index_arrow_position(&self, dom: usize, cod: usize, map: &FiniteMap) -> Option<usize> {
        self.index_arrows
            .iter()
            .position(|a| a.dom == dom && a.cod == cod && a.map == *map)
    }

    /// `g` after `f`: the index parts compose in the index category and the
    /// sections compose pointwise after reindexing.
    pub fn compose(&self, g: &TotalArrow, f: &TotalArrow) -> Result<TotalArrow> {
        if f.cod != g.dom {
            return Err(Error::EndpointMismatch(
                "total arrows are not composable".into(),
            ));
        }
        let u = &self.index_arrows[f.idx];
        let w = &self.index_arrows[g.idx];
        let composed_map = u.map.then(&w.map)?;
        let idx = self
            .index_arrow_position(u.dom, w.cod, &composed_map)
            .ok_or_else(|| {
                Error::MalformedFamily(
                    "index category is not closed under the required composition".into(),
                )
            })?;
        let section = {
            let mut table = BTreeMap::new();
            for i in self.family[u.dom].iter() {
                let above = g.section.apply(u.map.apply(i));
                table.insert(i.clone(), self.base.compose(above, f.section.apply(i))?);
            }
            FiniteMap::new(self.family[u.dom].clone(), self.base.arr.clone(), table)?
        };
        Ok(TotalArrow {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            idx,
            section,
        })
    }

    /// The chosen cartesian lift of an index arrow over an object above its
    /// codomain: reindex the family and take the identity section.
    pub fn cartesian_lift(&self, idx: usize, over: &TotalObject) -> Result<TotalArrow> {
        let u = &self.index_arrows[idx];
        if u.cod != over.pos {
            return Err(Error::EndpointMismatch(
                "object does not sit over the arrow's codomain".into(),
            ));
        }
        let reindexed = u.map.then(&over.map)?;
        let section = FiniteMap::from_fn(&self.family[u.dom], &self.base.arr, |i| {
            self.base.id_of(reindexed.apply(i)).clone()
        });
        Ok(TotalArrow {
            dom: TotalObject {
                pos: u.dom,
                map: reindexed,
            },
            cod: over.clone(),
            idx,
            section,
        })
    }

    /// Materializes the total as an internal category; intended for desk-size
    /// families.
    pub fn to_internal_category(&self) -> Result<InternalCategory> {
        let objects = self.objects();
        let arrows = self.arrows();
        let obj = FiniteSet::new(
            format!("{}₀", self.name),
            objects.iter().map(TotalObject::encode).collect(),
        );
        let arr = FiniteSet::new(
            format!("{}₁", self.name),
            arrows.iter().map(TotalArrow::encode).collect(),
        );
        let by_atom: BTreeMap<Atom, &TotalArrow> =
            arrows.iter().map(|a| (a.encode(), a)).collect();
        let obj_by_atom: BTreeMap<Atom, &TotalObject> =
            objects.iter().map(|o| (o.encode(), o)).collect();
        let src = FiniteMap::from_fn(&arr, &obj, |a| by_atom[a].dom.encode());
        let tgt = FiniteMap::from_fn(&arr, &obj, |a| by_atom[a].cod.encode());
        let ids = FiniteMap::from_fn(&obj, &arr, |o| self.identity(obj_by_atom[o]).encode());
        let apex = crate::ambient::pullback(&src, &tgt)?.apex;
        let mut comp_table = BTreeMap::new();
        for key in apex.iter() {
            let (ga, fa) = key.unpair().unwrap();
            let composed = self.compose(by_atom[&ga], by_atom[&fa])?;
            comp_table.insert(key.clone(), composed.encode());
        }
        let comp = FiniteMap::new(apex, arr.clone(), comp_table)?;
        InternalCategory::new(self.name.clone(), obj, arr, src, tgt, ids, comp)
    }

    /// Verifies the cloven-fibration property: the chosen lift of every index
    /// arrow over every object factors every compatible arrow uniquely.
    pub fn check_fibration(&self, opts: &CheckOptions) -> CheckReport {
        let mut report = CheckReport::new(&self.name);

        let mut exists = Axiom::new("cartesian-lift-exists", opts);
        let mut universal = Axiom::new("cartesian-lift-universal", opts);
        for (idx, u) in self.index_arrows.iter().enumerate() {
            for y in self.family[u.cod].maps_to(&self.base.obj) {
                let over = TotalObject { pos: u.cod, map: y };
                let lift = match self.cartesian_lift(idx, &over) {
                    Ok(l) => l,
                    Err(_) => {
                        exists.fail(&[&over.encode()]);
                        continue;
                    }
                };
                // Every arrow into `over` whose index part factors through u
                // must factor uniquely through the lift.
                for (widx, w) in self.index_arrows.iter().enumerate() {
                    if w.cod != u.cod {
                        continue;
                    }
                    for (pidx, prime) in self.index_arrows.iter().enumerate() {
                        if prime.dom != w.dom || prime.cod != u.dom {
                            continue;
                        }
                        if prime.map.then(&u.map).unwrap() != w.map {
                            continue;
                        }
                        for h in self.arrows_over_into(widx, &over) {
                            let candidates: Vec<TotalArrow> = self
                                .arrows_over_into(pidx, &lift.dom)
                                .into_iter()
                                .filter(|h2| {
                                    h2.dom == h.dom
                                        && self
                                            .compose(&lift, h2)
                                            .map(|c| c == h)
                                            .unwrap_or(false)
                                })
                                .collect();
                            if candidates.len() != 1 {
                                universal.fail_note(
                                    &[&h.encode()],
                                    &format!("{} factorizations", candidates.len()),
                                );
                            }
                        }
                    }
                }
            }
        }
        report.push(exists);
        report.push(universal);
        report
    }
}

/// A Grothendieck total with the fibered tensor of a monoidal base.
#[derive(Debug, Clone)]
pub struct MonoidalTotal {
    pub v: MonoidalStructure,
    pub total: TotalCategory,
}

/// Builds the monoidal total. The family must contain the terminal carrier
/// for the unit object to exist; the tensor is defined on object pairs whose
/// index product is again a family member. The index category is additionally
/// closed under binary products of arrows wherever those products exist in
/// the family.
pub fn monoidal_grothendieck(
    v: &MonoidalStructure,
    family: &[FiniteSet],
    connecting: &[FiniteMap],
) -> Result<MonoidalTotal> {
    let mut total = grothendieck(&v.base, family, connecting)?;
    if !family.iter().any(|m| *m == terminal()) {
        return Err(Error::FamilyNotProductClosed(
            "family must contain the terminal carrier".into(),
        ));
    }
    // Close the index category under available products of arrows.
    loop {
        let snapshot = total.index_arrows.clone();
        let before = snapshot.len();
        for f in &snapshot {
            for g in &snapshot {
                let dom_prod = product(&total.family[f.dom], &total.family[g.dom]).apex;
                let cod_prod = product(&total.family[f.cod], &total.family[g.cod]).apex;
                let (Some(dom), Some(cod)) = (
                    total.family.iter().position(|m| *m == dom_prod),
                    total.family.iter().position(|m| *m == cod_prod),
                ) else {
                    continue;
                };
                let map = FiniteMap::from_fn(&dom_prod, &cod_prod, |p| {
                    let (a, b) = p.unpair().unwrap();
                    Atom::pair(f.map.apply(&a), g.map.apply(&b))
                });
                let candidate = IndexArrow { dom, cod, map };
                if !total.index_arrows.contains(&candidate) {
                    total.index_arrows.push(candidate);
                }
            }
        }
        close_under_composition(&mut total.index_arrows);
        if total.index_arrows.len() == before {
            break;
        }
    }
    Ok(MonoidalTotal {
        v: v.clone(),
        total,
    })
}

impl MonoidalTotal {
    pub fn unit_object(&self) -> TotalObject {
        let pos = self
            .total
            .family
            .iter()
            .position(|m| *m == terminal())
            .expect("checked at construction");
        TotalObject {
            pos,
            map: FiniteMap::constant(&terminal(), &self.v.base.obj, &self.v.unit_obj),
        }
    }

    fn product_position(&self, a: usize, b: usize) -> Result<usize> {
        let apex = product(&self.total.family[a], &self.total.family[b]).apex;
        self.total
            .family
            .iter()
            .position(|m| *m == apex)
            .ok_or_else(|| {
                Error::FamilyNotProductClosed(format!(
                    "no family member matches {} × {}",
                    self.total.family[a].name(),
                    self.total.family[b].name()
                ))
            })
    }

    /// Tensor of objects: the family product indexes the pointwise tensor.
    pub fn tensor_obj(&self, x: &TotalObject, y: &TotalObject) -> Result<TotalObject> {
        let pos = self.product_position(x.pos, y.pos)?;
        let apex = &self.total.family[pos];
        let map = FiniteMap::from_fn(apex, &self.v.base.obj, |p| {
            let (a, b) = p.unpair().unwrap();
            self.v.tensor_obj(x.map.apply(&a), y.map.apply(&b))
        });
        Ok(TotalObject { pos, map })
    }

    /// Tensor of arrows, over the product of their index parts.
    pub fn tensor_arr(&self, f: &TotalArrow, g: &TotalArrow) -> Result<TotalArrow> {
        let dom = self.tensor_obj(&f.dom, &g.dom)?;
        let cod = self.tensor_obj(&f.cod, &g.cod)?;
        let uf = &self.total.index_arrows[f.idx];
        let ug = &self.total.index_arrows[g.idx];
        let map = FiniteMap::from_fn(
            &self.total.family[dom.pos],
            &self.total.family[cod.pos],
            |p| {
                let (a, b) = p.unpair().unwrap();
                Atom::pair(uf.map.apply(&a), ug.map.apply(&b))
            },
        );
        let idx = self
            .total
            .index_arrow_position(dom.pos, cod.pos, &map)
            .ok_or_else(|| {
                Error::FamilyNotProductClosed(
                    "index category lacks the product of the two index arrows".into(),
                )
            })?;
        let section = FiniteMap::from_fn(&self.total.family[dom.pos], &self.v.base.arr, |p| {
            let (a, b) = p.unpair().unwrap();
            self.v.tensor_arr(f.section.apply(&a), g.section.apply(&b))
        });
        Ok(TotalArrow {
            dom,
            cod,
            idx,
            section,
        })
    }

    /// Checks the monoidal-fibration conditions relative to the family: the
    /// tensor of chosen cartesian lifts is the chosen lift of the product
    /// arrow, and pulling a tensor back along the diagonal agrees with the
    /// fiberwise tensor entry by entry.
    pub fn check_monoidal_fibration(&self, opts: &CheckOptions) -> CheckReport {
        let mut report = CheckReport::new(format!("∫⟦{}⟧", self.v.name));
        let total = &self.total;

        let mut lifts = Axiom::new("tensor-preserves-lifts", opts);
        for (fidx, f) in total.index_arrows.iter().enumerate() {
            for (gidx, g) in total.index_arrows.iter().enumerate() {
                if self.product_position(f.dom, g.dom).is_err()
                    || self.product_position(f.cod, g.cod).is_err()
                {
                    continue;
                }
                for y in total.family[f.cod].maps_to(&total.base.obj) {
                    for z in total.family[g.cod].maps_to(&total.base.obj) {
                        let oy = TotalObject {
                            pos: f.cod,
                            map: y.clone(),
                        };
                        let oz = TotalObject {
                            pos: g.cod,
                            map: z.clone(),
                        };
                        let lift_f = total.cartesian_lift(fidx, &oy).unwrap();
                        let lift_g = total.cartesian_lift(gidx, &oz).unwrap();
                        let tensored = match self.tensor_arr(&lift_f, &lift_g) {
                            Ok(t) => t,
                            Err(_) => {
                                lifts.fail_note(&[&oy.encode(), &oz.encode()], "tensor undefined");
                                continue;
                            }
                        };
                        let product_obj = self.tensor_obj(&oy, &oz).unwrap();
                        let lift_product =
                            total.cartesian_lift(tensored.idx, &product_obj).unwrap();
                        if tensored != lift_product {
                            lifts.fail(&[&oy.encode(), &oz.encode()]);
                        }
                    }
                }
            }
        }
        report.push(lifts);

        // Δ*(x ⊗ y) against the fiberwise tensor, wherever the squared index
        // is in the family.
        let mut delta = Axiom::new("diagonal-fiber-tensor", opts);
        for (pos, member) in total.family.iter().enumerate() {
            if self.product_position(pos, pos).is_err() {
                continue;
            }
            let fiber_v = fiber_monoidal(&self.v, member);
            for x in member.maps_to(&total.base.obj) {
                for y in member.maps_to(&total.base.obj) {
                    let ox = TotalObject {
                        pos,
                        map: x.clone(),
                    };
                    let oy = TotalObject {
                        pos,
                        map: y.clone(),
                    };
                    let tensored = self.tensor_obj(&ox, &oy).unwrap();
                    let pulled =
                        encode_family(member, |i| tensored.map.apply(&Atom::pair(i, i)).clone());
                    let fiberwise = fiber_v.tensor_obj(
                        &encode_family(member, |i| x.apply(i).clone()),
                        &encode_family(member, |i| y.apply(i).clone()),
                    );
                    if pulled != fiberwise {
                        delta.fail(&[&ox.encode(), &oy.encode()]);
                    }
                }
            }
        }
        report.push(delta);

        report
    }
}

/// Fiber data of an indexed enriched functor at the carrier and its square,
/// together with the coherence isomorphisms at the two projections.
#[derive(Debug, Clone)]
pub struct BarInput {
    /// The fiber functor at the carrier itself.
    pub fx: EnrichedFunctor,
    /// The fiber functor at the squared carrier.
    pub fxx: EnrichedFunctor,
    /// Components of the isomorphism at the first projection: for each pair
    /// `p`, an element `I → hom(F₀(π₁)(p), F̄₀(π₁ p))`.
    pub phi1: FiniteMap,
    /// Components of the isomorphism at the second projection.
    pub phi2: FiniteMap,
}

impl BarInput {
    /// The fiber data of an externalized enriched functor: the coherence
    /// isomorphisms are identity elements.
    pub fn from_externalized(f: &EnrichedFunctor) -> BarInput {
        let carrier = f.dom.carrier.clone();
        let squared = product(&carrier, &carrier).apex;
        let fx = externalize_enriched_functor(f, &carrier);
        let fxx = externalize_enriched_functor(f, &squared);
        let phi = |first: bool| {
            FiniteMap::from_fn(&squared, &f.dom.v.base.arr, move |p| {
                let (a, b) = p.unpair().unwrap();
                let x = if first { a } else { b };
                f.cod.ident_at(f.obj_at(&x))
            })
        };
        BarInput {
            fx,
            fxx,
            phi1: phi(true),
            phi2: phi(false),
        }
    }
}

/// Recovers an enriched functor from fiber data: the object component reads
/// off the image of the identity family, and the morphism component is the
/// projection-pair component conjugated by the coherence isomorphisms.
pub fn bar_functor(
    input: &BarInput,
    x: &EnrichedCategory,
    y: &EnrichedCategory,
) -> Result<EnrichedFunctor> {
    let v = &x.v;
    let carrier = &x.carrier;
    let squared = product(carrier, carrier).apex;

    // Object component: evaluate the carrier-fiber functor at the identity
    // family.
    let id_family = encode_family(carrier, |i| i.clone());
    let image = input.fx.obj_at(&id_family);
    let f0 = decode_family(carrier, &y.carrier, image)?;

    // Morphism component at the projection pair of the squared fiber.
    let pi1 = encode_family(&squared, |p| p.unpair().unwrap().0);
    let pi2 = encode_family(&squared, |p| p.unpair().unwrap().1);
    let t = input.fxx.arr_at(&pi1, &pi2);
    let t_values = t
        .unlist()
        .ok_or_else(|| Error::IncoherentFiberData("squared component is not a section".into()))?;
    let a1 = decode_family(&squared, &y.carrier, input.fxx.obj_at(&pi1))?;
    let a2 = decode_family(&squared, &y.carrier, input.fxx.obj_at(&pi2))?;

    // Validate the coherence witnesses and find their inverses through the
    // underlying category of the codomain.
    let uy = crate::enriched::underlying_category(y)?;
    let element_inverse = |a: &Atom, b: &Atom, f: &Atom| -> Result<Atom> {
        let arrow = Atom::pair(&Atom::pair(a, b), f);
        if !uy.arr.contains(&arrow) {
            return Err(Error::IncoherentFiberData(format!(
                "{f} is not an element of hom({a},{b})"
            )));
        }
        let inv = uy.find_inverse(&arrow).ok_or_else(|| {
            Error::IncoherentFiberData(format!(
                "coherence element {f} at ({a},{b}) is not invertible"
            ))
        })?;
        Ok(inv.unpair().unwrap().1)
    };

    let mut table = BTreeMap::new();
    for (k, p) in squared.iter().enumerate() {
        let (x0, x1) = p.unpair().unwrap();
        let b0 = f0.apply(&x0);
        let b1 = f0.apply(&x1);
        let phi1 = input.phi1.apply(p);
        let phi2 = input.phi2.apply(p);
        let phi1_inv = element_inverse(a1.apply(p), b0, phi1)?;
        element_inverse(a2.apply(p), b1, phi2)?;

        // Post-compose with φ₂: hom(A1,A2) → hom(A1,b1).
        let hom_a1a2 = y.hom_at(a1.apply(p), a2.apply(p));
        let post = v.compose(
            &y.comp_at(a1.apply(p), a2.apply(p), b1),
            &v.compose(
                &v.tensor_arr(phi2, &v.id_arr(&hom_a1a2)),
                &v.inverse_of(&v.lunit_at(&hom_a1a2))?,
            )?,
        )?;
        // Pre-compose with φ₁⁻¹: hom(A1,b1) → hom(b0,b1).
        let hom_a1b1 = y.hom_at(a1.apply(p), b1);
        let pre = v.compose(
            &y.comp_at(b0, a1.apply(p), b1),
            &v.compose(
                &v.tensor_arr(&v.id_arr(&hom_a1b1), &phi1_inv),
                &v.inverse_of(&v.runit_at(&hom_a1b1))?,
            )?,
        )?;
        let component = v.compose(&pre, &v.compose(&post, &t_values[k])?)?;
        table.insert(p.clone(), component);
    }
    let f1 = FiniteMap::new(squared, v.base.arr.clone(), table)?;
    EnrichedFunctor::new("bar", x.clone(), y.clone(), f0.clone(), f1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::enriched::check_enriched_category;
    use crate::internal_cat::{check_category, check_functor, check_nat, identity_functor};
    use crate::monoidal::{check_monoidal, check_monoidal_functor};

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    fn two_set() -> FiniteSet {
        FiniteSet::new("2", vec![Atom::sym("x"), Atom::sym("y")])
    }

    #[test]
    fn fiber_object_count_and_checker() {
        let a = corpus::deloop_meet();
        for index in [FiniteSet::empty("∅"), terminal(), two_set()] {
            let fib = fiber(&a, &index);
            assert_eq!(
                fib.cat.obj.len(),
                a.obj.len().pow(index.len() as u32),
                "index {}",
                index.name()
            );
            assert!(check_category(&fib.cat, &opts()).passed());
        }
        // Empty index: the one-object one-arrow category.
        let fib = fiber(&a, &FiniteSet::empty("∅"));
        assert_eq!(fib.cat.obj.len(), 1);
        assert_eq!(fib.cat.arr.len(), 1);
    }

    #[test]
    fn fiber_over_terminal_is_isomorphic_to_the_base() {
        let a = corpus::v_bool().base;
        let fib = fiber(&a, &terminal());
        assert_eq!(fib.cat.obj.len(), a.obj.len());
        assert_eq!(fib.cat.arr.len(), a.arr.len());
        let unwrap0 = FiniteMap::from_fn(&fib.cat.obj, &a.obj, |m| {
            m.unlist().unwrap().pop().unwrap()
        });
        let unwrap1 = FiniteMap::from_fn(&fib.cat.arr, &a.arr, |m| {
            m.unlist().unwrap().pop().unwrap()
        });
        let unwrap =
            InternalFunctor::new("ev", fib.cat.clone(), a.clone(), unwrap0, unwrap1).unwrap();
        assert!(check_functor(&unwrap, &opts()).passed());
        assert!(unwrap.f0.inverse().is_some() && unwrap.f1.inverse().is_some());
    }

    #[test]
    fn fiber_of_delooping_composes_pointwise() {
        let a = corpus::deloop_z2();
        let fib = fiber(&a, &two_set());
        assert_eq!(fib.cat.obj.len(), 1);
        assert_eq!(fib.cat.arr.len(), 4);
        let e = corpus::z2_e();
        let s = corpus::z2_s();
        let es = Atom::list(&[e.clone(), s.clone()]);
        let ss = Atom::list(&[s.clone(), s.clone()]);
        let composed = fib.cat.compose(&es, &ss).unwrap();
        assert_eq!(composed, Atom::list(&[s, e]));
    }

    #[test]
    fn reindexing_is_strictly_functorial() {
        let a = corpus::v_bool().base;
        let three = FiniteSet::new("3", vec![Atom::sym("0"), Atom::sym("1"), Atom::sym("2")]);
        let two = two_set();
        let one = terminal();
        let fib3 = fiber(&a, &three);
        let fib2 = fiber(&a, &two);

        let u = FiniteMap::from_fn(&two, &three, |i| {
            if i.as_str() == "x" {
                Atom::sym("0")
            } else {
                Atom::sym("2")
            }
        });
        let w = FiniteMap::constant(&one, &two, &Atom::sym("y"));

        let u_star = reindex(&u, &fib3).unwrap();
        assert!(check_functor(&u_star, &opts()).passed());
        let w_star = reindex(&w, &fib2).unwrap();
        let uw = w.then(&u).unwrap();
        let uw_star = reindex(&uw, &fib3).unwrap();
        let composed = crate::internal_cat::compose_functors(&w_star, &u_star).unwrap();
        assert_eq!(uw_star, composed);

        // Identity reindexing is the identity functor.
        let id_star = reindex(&FiniteMap::identity(&three), &fib3).unwrap();
        assert!(id_star.same_tables(&identity_functor(&fib3.cat)));

        // Reindexing along the empty map lands in the trivial fiber.
        let from_empty =
            FiniteMap::new(FiniteSet::empty("∅"), three.clone(), BTreeMap::new()).unwrap();
        let empty_star = reindex(&from_empty, &fib3).unwrap();
        assert_eq!(empty_star.cod.obj.len(), 1);
    }

    #[test]
    fn fiber_monoidal_passes_and_reindexing_preserves_it_strictly() {
        for v in [corpus::v_bool(), corpus::v_twu()] {
            let fm = fiber_monoidal(&v, &two_set());
            let report = check_monoidal(&fm, &opts());
            assert!(report.passed(), "{}: {:?}", fm.name, report.failed_axioms());
            assert_eq!(
                fm.unit_obj,
                Atom::list(&[v.unit_obj.clone(), v.unit_obj.clone()])
            );
        }

        // Componentwise meet on pairs.
        let v = corpus::v_bool();
        let fm = fiber_monoidal(&v, &two_set());
        let o = |a: &str, b: &str| Atom::list(&[Atom::sym(a), Atom::sym(b)]);
        assert_eq!(fm.tensor_obj(&o("0", "1"), &o("1", "1")), o("0", "1"));

        // The monoidal reindexing functor has identity coherence data and
        // still passes the monoidal-functor checker.
        let u = FiniteMap::constant(&terminal(), &two_set(), &Atom::sym("x"));
        let mon = fiber_reindex_monoidal(&v, &u).unwrap();
        assert!(mon.mu.table().values().all(|m| {
            let s = mon.cod_v.src_of(m);
            mon.cod_v.tgt_of(m) == s && m == mon.cod_v.base.id_of(s)
        }));
        let report = check_monoidal_functor(&mon, &opts());
        assert!(report.passed(), "{:?}", report.failed_axioms());
    }

    #[test]
    fn fiber_monoidal_over_terminal_recovers_the_base() {
        let v = corpus::v_sign();
        let fm = fiber_monoidal(&v, &terminal());
        assert_eq!(fm.base.obj.len(), v.base.obj.len());
        let wrap = |x: &Atom| Atom::list(std::slice::from_ref(x));
        for a in v.base.obj.iter() {
            for b in v.base.obj.iter() {
                assert_eq!(fm.tensor_obj(&wrap(a), &wrap(b)), wrap(&v.tensor_obj(a, b)));
            }
        }
    }

    #[test]
    fn enriched_fibers_pass_for_the_corpus() {
        for x in corpus::enriched_corpus() {
            for index in [FiniteSet::empty("∅"), terminal(), two_set()] {
                let ef = enriched_fiber(&x, &index);
                let report = check_enriched_category(&ef, &opts());
                assert!(
                    report.passed(),
                    "{} at {}: {:?}",
                    x.name,
                    index.name(),
                    report.failed_axioms()
                );
            }
        }
    }

    #[test]
    fn enriched_fiber_of_a_preorder_is_the_product_preorder() {
        let x = corpus::preorder_chain3();
        let ef = enriched_fiber(&x, &two_set());
        let fam = |a: &str, b: &str| Atom::list(&[Atom::sym(a), Atom::sym(b)]);
        let h = ef.hom_at(&fam("p", "r"), &fam("q", "p"));
        assert_eq!(h, Atom::list(&[Atom::sym("1"), Atom::sym("0")]));
    }

    #[test]
    fn enriched_reindexing_has_identity_components() {
        let x = corpus::preorder_chain3();
        let u = FiniteMap::constant(&terminal(), &two_set(), &Atom::sym("x"));
        let f = enriched_reindex(&u, &x).unwrap();
        let report = crate::enriched::check_enriched_functor(&f, &opts());
        assert!(report.passed(), "{:?}", report.failed_axioms());
        for (key, value) in f.f1.table() {
            let hom = f.dom.hom.apply(key);
            assert_eq!(value, &f.dom.v.id_arr(hom));
        }
        // Identity reindexing gives the identity functor of the fiber.
        let id_u = FiniteMap::identity(&two_set());
        let f = enriched_reindex(&id_u, &x).unwrap();
        assert_eq!(
            f,
            crate::enriched::identity_enriched_functor(&enriched_fiber(&x, &two_set()))
        );
    }

    #[test]
    fn externalization_is_functorial_fiberwise() {
        let c = corpus::deloop_z2();
        let g = corpus::z2_collapse_endofunctor();
        let index = two_set();
        let gg = crate::internal_cat::compose_functors(&g, &g).unwrap();
        let lhs = externalize_functor(&gg, &index);
        let rhs = crate::internal_cat::compose_functors(
            &externalize_functor(&g, &index),
            &externalize_functor(&g, &index),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
        let id = externalize_functor(&identity_functor(&c), &index);
        assert!(id.same_tables(&identity_functor(&fiber(&c, &index).cat)));

        // Naturality transfers pointwise, so the broken transformation stays
        // broken fiberwise.
        let n = corpus::rightzero_nat_mutant();
        let en = externalize_nat(&n, &index);
        let report = check_nat(&en, &opts());
        assert!(report.axiom("component-typing").unwrap().passed());
        assert!(!report.axiom("naturality").unwrap().passed());
    }

    #[test]
    fn small_coincidence_passes_on_corpus_and_matches_enriched_witnesses() {
        for x in corpus::enriched_corpus() {
            let report = small_coincidence_check(&x, &opts());
            assert!(report.passed(), "{}: {:?}", x.name, report.failed_axioms());
        }
        for broken in corpus::enriched_typing_mutants() {
            let small = small_coincidence_check(&broken, &opts());
            let enriched = check_enriched_category(&broken, &opts());
            assert!(!small.passed(), "{}", broken.name);
            assert_eq!(
                small.axiom("typing").unwrap().witnesses,
                enriched.axiom("typing").unwrap().witnesses,
                "{}",
                broken.name
            );
        }
    }

    #[test]
    fn underlying_square_commutes_on_small_indexes() {
        for x in [corpus::preorder_chain3(), corpus::ind_bool2(), corpus::x_twu()] {
            for index in [FiniteSet::empty("∅"), terminal(), two_set()] {
                let report = underlying_commute_check(&x, &index, &opts()).unwrap();
                assert!(
                    report.passed(),
                    "{} at {}: {:?}",
                    x.name,
                    index.name(),
                    report.failed_axioms()
                );
            }
        }
    }

    #[test]
    fn grothendieck_total_over_delooping() {
        let a = corpus::deloop_meet();
        let empty = FiniteSet::empty("∅");
        let one = terminal();
        let two = two_set();
        let family = vec![empty.clone(), one.clone(), two.clone()];
        let connecting = vec![
            FiniteMap::constant(&one, &two, &Atom::sym("x")),
            FiniteMap::new(empty.clone(), one.clone(), BTreeMap::new()).unwrap(),
        ];
        let total = grothendieck(&a, &family, &connecting).unwrap();
        // Object count: |A0|^|X| summed over the family.
        assert_eq!(total.objects().len(), 1 + 1 + 1);
        let cat = total.to_internal_category().unwrap();
        assert!(check_category(&cat, &opts()).passed());
        let report = total.check_fibration(&opts());
        assert!(report.passed(), "{:?}", report.failed_axioms());
    }

    #[test]
    fn grothendieck_over_single_terminal_recovers_the_base() {
        let a = corpus::v_bool().base;
        let total = grothendieck(&a, &[terminal()], &[]).unwrap();
        let cat = total.to_internal_category().unwrap();
        assert_eq!(cat.obj.len(), a.obj.len());
        assert_eq!(cat.arr.len(), a.arr.len());
        assert!(check_category(&cat, &opts()).passed());
    }

    #[test]
    fn cartesian_lift_is_the_identity_section_on_the_reindexed_family() {
        let a = corpus::deloop_meet();
        let one = terminal();
        let two = two_set();
        let u = FiniteMap::constant(&one, &two, &Atom::sym("x"));
        let total = grothendieck(&a, &[one.clone(), two.clone()], &[u.clone()]).unwrap();
        let idx = total.index_arrow_position(0, 1, &u).unwrap();
        let over = TotalObject {
            pos: 1,
            map: FiniteMap::constant(&two, &a.obj, &Atom::sym("•")),
        };
        let lift = total.cartesian_lift(idx, &over).unwrap();
        assert_eq!(lift.dom.map, u.then(&over.map).unwrap());
        assert!(lift
            .section
            .table()
            .values()
            .all(|f| f == a.id_of(&Atom::sym("•"))));
    }

    #[test]
    fn rejects_malformed_families() {
        let a = corpus::deloop_meet();
        assert!(matches!(
            grothendieck(&a, &[], &[]),
            Err(Error::MalformedFamily(_))
        ));
        let stray = FiniteMap::constant(&two_set(), &terminal(), &crate::ambient::star());
        assert!(matches!(
            grothendieck(&a, &[terminal()], &[stray]),
            Err(Error::MalformedFamily(_))
        ));
        assert!(matches!(
            monoidal_grothendieck(&corpus::v_bool(), &[two_set()], &[]),
            Err(Error::FamilyNotProductClosed(_))
        ));
    }

    #[test]
    fn bar_of_externalized_functor_is_the_functor() {
        // Two-element carriers keep the squared fiber at sixteen families.
        for f in [
            crate::enriched::identity_enriched_functor(&corpus::preorder_discrete2()),
            corpus::x_z2_swap_functor(),
            corpus::x_twu_swap_functor(),
        ] {
            let input = BarInput::from_externalized(&f);
            let back = bar_functor(&input, &f.dom, &f.cod).unwrap();
            assert_eq!(back.f0, f.f0, "{}", f.name);
            assert_eq!(back.f1, f.f1, "{}", f.name);
            let report = crate::enriched::check_enriched_functor(&back, &opts());
            assert!(report.passed(), "{:?}", report.failed_axioms());
        }
    }

    #[test]
    fn bar_corrects_twisted_object_assignments() {
        // Conjugate the squared-fiber functor of the identity by a family of
        // isomorphisms that swaps every family pointwise: its raw component
        // differs from the identity, and the bar readoff with the matching
        // witnesses undoes the twist.
        let x = corpus::x_twu();
        let f = crate::enriched::identity_enriched_functor(&x);
        let honest = BarInput::from_externalized(&f);
        let squared = product(&x.carrier, &x.carrier).apex;
        let v = &x.v;

        let swap_one = |a: &Atom| {
            if a.as_str() == "a" {
                Atom::sym("b")
            } else {
                Atom::sym("a")
            }
        };
        let swap_family = |m: &Atom| {
            let vals: Vec<Atom> = m.unlist().unwrap().iter().map(&swap_one).collect();
            Atom::list(&vals)
        };
        // ψ is twisted exactly at the first projection family, so the twist
        // shows up in the (π₁,π₂) component that the bar readoff uses.
        let pi1_family = encode_family(&squared, |p| p.unpair().unwrap().0);
        let psi_twist = |m: &Atom| *m == pi1_family;

        let fxx = &honest.fxx;
        let fiber_v = fxx.dom.v.clone();
        let conj_f0 = FiniteMap::from_fn(&fxx.dom.carrier, &fxx.cod.carrier, swap_family);
        let conj_f1 = FiniteMap::from_fn(
            &product(&fxx.dom.carrier, &fxx.dom.carrier).apex,
            &fiber_v.base.arr,
            |pair| {
                let (m0, m1) = pair.unpair().unwrap();
                let base = fxx.arr_at(&m0, &m1);
                let correction = psi_twist(&m0) ^ psi_twist(&m1);
                let corrected: Vec<Atom> = base
                    .unlist()
                    .unwrap()
                    .iter()
                    .map(|e| {
                        corpus::sign_arrow(
                            corpus::sign_parity(e),
                            corpus::sign_twist(e) ^ correction,
                        )
                    })
                    .collect();
                Atom::list(&corrected)
            },
        );
        let twisted_fxx = EnrichedFunctor::new(
            "twisted",
            fxx.dom.clone(),
            fxx.cod.clone(),
            conj_f0,
            conj_f1,
        )
        .unwrap();
        let report = crate::enriched::check_enriched_functor(&twisted_fxx, &opts());
        assert!(report.passed(), "{:?}", report.failed_axioms());

        // Witnesses: φ_i carries the ψ-twist of the i-th projection family.
        let phi = |family: &Atom| {
            let twisted = psi_twist(family);
            FiniteMap::from_fn(&squared, &v.base.arr, move |_| {
                corpus::sign_arrow(false, twisted)
            })
        };
        let pi2_family = encode_family(&squared, |p| p.unpair().unwrap().1);
        let input = BarInput {
            fx: honest.fx.clone(),
            fxx: twisted_fxx.clone(),
            phi1: phi(&pi1_family),
            phi2: phi(&pi2_family),
        };

        // The naive readoff differs from the honest component.
        let pi1 = encode_family(&squared, |p| p.unpair().unwrap().0);
        let pi2 = encode_family(&squared, |p| p.unpair().unwrap().1);
        assert_ne!(
            twisted_fxx.arr_at(&pi1, &pi2),
            honest.fxx.arr_at(&pi1, &pi2)
        );

        let back = bar_functor(&input, &x, &x).unwrap();
        assert_eq!(back.f0, f.f0);
        assert_eq!(back.f1, f.f1);
    }

    #[test]
    fn bar_rejects_noninvertible_witnesses() {
        // Over the Boolean poset the arrow u is not invertible, so a
        // coherence witness built from it must be refused.
        let f = crate::enriched::identity_enriched_functor(&corpus::preorder_discrete2());
        let mut input = BarInput::from_externalized(&f);
        let squared = product(&f.dom.carrier, &f.dom.carrier).apex;
        input.phi1 = FiniteMap::constant(&squared, &f.dom.v.base.arr, &Atom::sym("u"));
        assert!(matches!(
            bar_functor(&input, &f.dom, &f.cod),
            Err(Error::IncoherentFiberData(_))
        ));
    }
}
