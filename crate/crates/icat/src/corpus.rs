//! Shipped example structures and their deliberately broken variants.
//!
//! The corpus spans several enriching structures: the Boolean poset, strict
//! deloopings of small monoids, a two-object parity groupoid, and twisted
//! variants of the groupoid with a non-trivial associator or non-trivial
//! unitors. The broken variants are single-entry mutations, each chosen so
//! that exactly one axiom family fails.

use std::collections::BTreeMap;

use crate::ambient::{product, Atom, FiniteMap, FiniteSet};
use crate::enriched::{
    identity_enriched_functor, indiscrete_enriched, EnrichedCategory, EnrichedFunctor, EnrichedNat,
};
use crate::internal_cat::{product_cat, InternalCategory, InternalFunctor, InternalNat};
use crate::monoidal::{triple_apex, MonoidalFunctorData, MonoidalStructure};

fn sym(s: &str) -> Atom {
    Atom::sym(s)
}

fn dot() -> Atom {
    sym("•")
}

/// Delooping of a monoid: one object, the monoid elements as arrows,
/// composition `g∘f = mult(g, f)`.
pub fn delooping(
    name: &str,
    elements: &[&str],
    unit: &str,
    mult: impl Fn(&str, &str) -> String,
) -> InternalCategory {
    let obj = FiniteSet::new(format!("{name}₀"), vec![dot()]);
    let arr = FiniteSet::new(
        format!("{name}₁"),
        elements.iter().map(|e| sym(e)).collect(),
    );
    let src = FiniteMap::constant(&arr, &obj, &dot());
    let tgt = FiniteMap::constant(&arr, &obj, &dot());
    let ids = FiniteMap::constant(&obj, &arr, &sym(unit));
    let apex = crate::ambient::pullback(&src, &tgt).unwrap().apex;
    let comp = FiniteMap::from_fn(&apex, &arr, |key| {
        let (g, f) = key.unpair().unwrap();
        sym(&mult(g.as_str(), f.as_str()))
    });
    InternalCategory::new(name, obj, arr, src, tgt, ids, comp).unwrap()
}

/// Delooping of the meet semilattice `{e, s}` with `s·s = s`.
pub fn deloop_meet() -> InternalCategory {
    delooping("Meet", &["e", "s"], "e", |g, f| {
        if g == "e" && f == "e" {
            "e".into()
        } else {
            "s".into()
        }
    })
}

/// The meet delooping with one composition entry redirected: `e∘s` returns
/// `e` instead of `s`. Fails exactly the left unit law, witness `s`.
pub fn deloop_meet_unit_mutant() -> InternalCategory {
    let good = deloop_meet();
    let mut table = good.comp.table().clone();
    table.insert(Atom::pair(&sym("e"), &sym("s")), sym("e"));
    let comp = FiniteMap::new(good.comp.dom().clone(), good.arr.clone(), table).unwrap();
    InternalCategory::new("Meet-unit-mutant", good.obj, good.arr, good.src, good.tgt, good.ids, comp)
        .unwrap()
}

pub fn z2_obj() -> Atom {
    dot()
}
pub fn z2_e() -> Atom {
    sym("e")
}
pub fn z2_s() -> Atom {
    sym("s")
}

/// Delooping of the group Z/2.
pub fn deloop_z2() -> InternalCategory {
    delooping("Z2", &["e", "s"], "e", |g, f| {
        if (g == "s") ^ (f == "s") {
            "s".into()
        } else {
            "e".into()
        }
    })
}

/// The unique non-identity endofunctor of the Z/2 delooping: the collapse
/// onto the trivial submonoid.
pub fn z2_collapse_endofunctor() -> InternalFunctor {
    let c = deloop_z2();
    let f1 = FiniteMap::constant(&c.arr, &c.arr, &z2_e());
    InternalFunctor::new("collapse", c.clone(), c, FiniteMap::identity(&deloop_z2().obj), f1)
        .unwrap()
}

/// The identity functor on the Z/2 delooping with the arrow component
/// redirected on the identity arrow. Fails exactly functoriality.
pub fn z2_id_functor_mutant() -> InternalFunctor {
    let c = deloop_z2();
    let f1 = FiniteMap::from_fn(&c.arr, &c.arr, |f| {
        if f == &z2_e() {
            z2_s()
        } else {
            f.clone()
        }
    });
    InternalFunctor::new("id-mutant", c.clone(), c, FiniteMap::identity(&deloop_z2().obj), f1)
        .unwrap()
}

/// Delooping of a non-commutative monoid: unit `e`, and for non-identity
/// elements the earlier factor of a composite wins.
pub fn rightzero_delooping() -> InternalCategory {
    delooping("RZ", &["e", "a", "b"], "e", |g, f| {
        if g == "e" {
            f.into()
        } else if f == "e" {
            g.into()
        } else {
            f.into()
        }
    })
}

/// A constant transformation between identity functors of the
/// non-commutative delooping; its component is not central, so exactly
/// naturality fails.
pub fn rightzero_nat_mutant() -> InternalNat {
    let c = rightzero_delooping();
    let id = crate::internal_cat::identity_functor(&c);
    let component = FiniteMap::constant(&c.obj, &c.arr, &sym("a"));
    InternalNat::new("rz-mutant", id.clone(), id, component).unwrap()
}

/// Builds a monoidal structure from closures over atoms.
fn monoidal_from(
    name: &str,
    base: InternalCategory,
    unit: Atom,
    tensor_obj: impl Fn(&Atom, &Atom) -> Atom,
    tensor_arr: impl Fn(&Atom, &Atom) -> Atom,
    assoc: impl Fn(&Atom, &Atom, &Atom) -> Atom,
    lunit: impl Fn(&Atom) -> Atom,
    runit: impl Fn(&Atom) -> Atom,
) -> MonoidalStructure {
    let squared = product_cat(&base, &base);
    let f0 = FiniteMap::from_fn(&squared.obj, &base.obj, |p| {
        let (a, b) = p.unpair().unwrap();
        tensor_obj(&a, &b)
    });
    let f1 = FiniteMap::from_fn(&squared.arr, &base.arr, |p| {
        let (f, g) = p.unpair().unwrap();
        tensor_arr(&f, &g)
    });
    let tensor =
        InternalFunctor::new(format!("⊗_{name}"), squared, base.clone(), f0, f1).unwrap();
    let assoc_table = FiniteMap::from_fn(&triple_apex(&base.obj), &base.arr, |t| {
        let (a, b, c) = t.untriple().unwrap();
        assoc(&a, &b, &c)
    });
    let lunit_table = FiniteMap::from_fn(&base.obj, &base.arr, |a| lunit(a));
    let runit_table = FiniteMap::from_fn(&base.obj, &base.arr, |a| runit(a));
    MonoidalStructure::new(name, base, tensor, unit, assoc_table, lunit_table, runit_table)
        .unwrap()
}

/// Identity components for a strict structure over a given object operation.
fn strict_parts<'a>(
    base: &'a InternalCategory,
    tensor_obj: impl Fn(&Atom, &Atom) -> Atom + Copy + 'a,
    unit: Atom,
) -> (
    impl Fn(&Atom, &Atom, &Atom) -> Atom + 'a,
    impl Fn(&Atom) -> Atom + 'a,
    impl Fn(&Atom) -> Atom + 'a,
) {
    let assoc = move |a: &Atom, b: &Atom, c: &Atom| {
        base.id_of(&tensor_obj(&tensor_obj(a, b), c)).clone()
    };
    let unit_l = unit.clone();
    let lunit = move |a: &Atom| base.id_of(&tensor_obj(&unit_l, a)).clone();
    let runit = move |a: &Atom| base.id_of(&tensor_obj(a, &unit)).clone();
    (assoc, lunit, runit)
}

/// The unique arrow of the Boolean poset between two truth values, when it
/// exists.
pub fn bool_arrow(src: &Atom, tgt: &Atom) -> Option<Atom> {
    match (src.as_str(), tgt.as_str()) {
        ("0", "0") => Some(sym("i0")),
        ("0", "1") => Some(sym("u")),
        ("1", "1") => Some(sym("i1")),
        _ => None,
    }
}

fn bool_base() -> InternalCategory {
    let obj = FiniteSet::new("B₀", vec![sym("0"), sym("1")]);
    let arr = FiniteSet::new("B₁", vec![sym("i0"), sym("i1"), sym("u")]);
    let src = FiniteMap::from_fn(&arr, &obj, |f| match f.as_str() {
        "i1" => sym("1"),
        _ => sym("0"),
    });
    let tgt = FiniteMap::from_fn(&arr, &obj, |f| match f.as_str() {
        "i0" => sym("0"),
        _ => sym("1"),
    });
    let ids = FiniteMap::from_fn(&obj, &arr, |a| bool_arrow(a, a).unwrap());
    let apex = crate::ambient::pullback(&src, &tgt).unwrap().apex;
    let comp = {
        let src = src.clone();
        let tgt = tgt.clone();
        FiniteMap::from_fn(&apex, &arr, move |key| {
            let (g, f) = key.unpair().unwrap();
            bool_arrow(src.apply(&f), tgt.apply(&g)).unwrap()
        })
    };
    InternalCategory::new("Bool", obj, arr, src, tgt, ids, comp).unwrap()
}

fn bool_min(a: &Atom, b: &Atom) -> Atom {
    if a.as_str() == "0" || b.as_str() == "0" {
        sym("0")
    } else {
        sym("1")
    }
}

fn bool_max(a: &Atom, b: &Atom) -> Atom {
    if a.as_str() == "1" || b.as_str() == "1" {
        sym("1")
    } else {
        sym("0")
    }
}

/// The Boolean poset with meet as tensor and true as unit; strict.
pub fn v_bool() -> MonoidalStructure {
    let base = bool_base();
    let tensor_arr = {
        let base = base.clone();
        move |f: &Atom, g: &Atom| {
            bool_arrow(
                &bool_min(base.src.apply(f), base.src.apply(g)),
                &bool_min(base.tgt.apply(f), base.tgt.apply(g)),
            )
            .unwrap()
        }
    };
    let (assoc, lunit, runit) = strict_parts(&base, bool_min, sym("1"));
    monoidal_from(
        "V_bool",
        base.clone(),
        sym("1"),
        bool_min,
        tensor_arr,
        assoc,
        lunit,
        runit,
    )
}

/// V_bool with the tensor flipped to join while the unit stays at true: the
/// left unitor at 0 would need an arrow 1 → 0, so its typing fails.
pub fn v_bool_max_mutant() -> MonoidalStructure {
    let base = bool_base();
    let tensor_arr = {
        let base = base.clone();
        move |f: &Atom, g: &Atom| {
            bool_arrow(
                &bool_max(base.src.apply(f), base.src.apply(g)),
                &bool_max(base.tgt.apply(f), base.tgt.apply(g)),
            )
            .unwrap()
        }
    };
    let fallback = {
        let base = base.clone();
        move |s: &Atom, t: &Atom| bool_arrow(s, t).unwrap_or_else(|| base.id_of(&sym("0")).clone())
    };
    let lunit = {
        let fallback = fallback.clone();
        move |a: &Atom| fallback(&bool_max(&sym("1"), a), a)
    };
    let runit = move |a: &Atom| fallback(&bool_max(a, &sym("1")), a);
    let base2 = base.clone();
    let assoc = move |a: &Atom, b: &Atom, c: &Atom| {
        base2.id_of(&bool_max(&bool_max(a, b), c)).clone()
    };
    monoidal_from(
        "V_bool-max",
        base,
        sym("1"),
        bool_max,
        tensor_arr,
        assoc,
        lunit,
        runit,
    )
}

/// V_bool with a non-associative object tensor table; rejected both by the
/// checker and by the brute-force monoid oracle.
pub fn v_bool_tensor_obj_mutant() -> MonoidalStructure {
    let base = bool_base();
    let negate_first = |a: &Atom, _b: &Atom| {
        if a.as_str() == "0" {
            sym("1")
        } else {
            sym("0")
        }
    };
    let tensor_arr = {
        let base = base.clone();
        move |f: &Atom, g: &Atom| {
            bool_arrow(
                &negate_first(base.src.apply(f), base.src.apply(g)),
                &negate_first(base.tgt.apply(f), base.tgt.apply(g)),
            )
            .unwrap_or_else(|| sym("i0"))
        }
    };
    let base2 = base.clone();
    let assoc = move |a: &Atom, b: &Atom, c: &Atom| {
        base2
            .id_of(&negate_first(&negate_first(a, b), c))
            .clone()
    };
    let base3 = base.clone();
    let lunit = move |a: &Atom| {
        let from = negate_first(&sym("1"), a);
        bool_arrow(&from, a).unwrap_or_else(|| base3.id_of(&sym("0")).clone())
    };
    let base4 = base.clone();
    let runit = move |a: &Atom| {
        let from = negate_first(a, &sym("1"));
        bool_arrow(&from, a).unwrap_or_else(|| base4.id_of(&sym("0")).clone())
    };
    monoidal_from(
        "V_bool-nonassoc",
        base,
        sym("1"),
        negate_first,
        tensor_arr,
        assoc,
        lunit,
        runit,
    )
}

/// Strict monoidal delooping of the meet semilattice.
pub fn v_meet() -> MonoidalStructure {
    let base = deloop_meet();
    let obj = |_: &Atom, _: &Atom| dot();
    let tensor_arr = {
        let base = base.clone();
        move |f: &Atom, g: &Atom| base.compose(f, g).unwrap()
    };
    let (assoc, lunit, runit) = strict_parts(&base, obj, dot());
    monoidal_from("V_meet", base.clone(), dot(), obj, tensor_arr, assoc, lunit, runit)
}

/// Strict monoidal delooping of Z/2 with the group product as tensor.
pub fn v_z2() -> MonoidalStructure {
    let base = deloop_z2();
    let obj = |_: &Atom, _: &Atom| dot();
    let tensor_arr = {
        let base = base.clone();
        move |f: &Atom, g: &Atom| base.compose(f, g).unwrap()
    };
    let (assoc, lunit, runit) = strict_parts(&base, obj, dot());
    monoidal_from("V_z2", base.clone(), dot(), obj, tensor_arr, assoc, lunit, runit)
}

pub fn sign_obj(p: bool) -> Atom {
    sym(if p { "1" } else { "0" })
}

pub fn sign_arrow(obj: bool, twisted: bool) -> Atom {
    sym(match (obj, twisted) {
        (false, false) => "e0",
        (false, true) => "s0",
        (true, false) => "e1",
        (true, true) => "s1",
    })
}

pub fn sign_parity(a: &Atom) -> bool {
    a.as_str().ends_with('1')
}

pub fn sign_twist(f: &Atom) -> bool {
    f.as_str().starts_with('s')
}

/// The parity groupoid: objects Z/2, each with automorphism group Z/2 and no
/// arrows between distinct objects.
fn sign_base() -> InternalCategory {
    let obj = FiniteSet::new("S₀", vec![sym("0"), sym("1")]);
    let arr = FiniteSet::new(
        "S₁",
        vec![sym("e0"), sym("s0"), sym("e1"), sym("s1")],
    );
    let src = FiniteMap::from_fn(&arr, &obj, |f| sign_obj(sign_parity(f)));
    let tgt = src.clone();
    let ids = FiniteMap::from_fn(&obj, &arr, |a| sign_arrow(a.as_str() == "1", false));
    let apex = crate::ambient::pullback(&src, &tgt).unwrap().apex;
    let comp = FiniteMap::from_fn(&apex, &arr, |key| {
        let (g, f) = key.unpair().unwrap();
        sign_arrow(sign_parity(&g), sign_twist(&g) ^ sign_twist(&f))
    });
    InternalCategory::new("Sign", obj, arr, src, tgt, ids, comp).unwrap()
}

fn sign_tensor_obj(a: &Atom, b: &Atom) -> Atom {
    sign_obj((a.as_str() == "1") ^ (b.as_str() == "1"))
}

fn sign_tensor_arr(f: &Atom, g: &Atom) -> Atom {
    sign_arrow(
        sign_parity(f) ^ sign_parity(g),
        sign_twist(f) ^ sign_twist(g),
    )
}

/// The parity groupoid with XOR as tensor; strict.
pub fn v_sign() -> MonoidalStructure {
    let base = sign_base();
    let (assoc, lunit, runit) = strict_parts(&base, sign_tensor_obj, sym("0"));
    monoidal_from(
        "V_sign",
        base.clone(),
        sym("0"),
        sign_tensor_obj,
        sign_tensor_arr,
        assoc,
        lunit,
        runit,
    )
}

/// V_sign with the left unitor twisted at object 1. Fails exactly the
/// triangle identity.
pub fn v_sign_triangle_mutant() -> MonoidalStructure {
    let base = sign_base();
    let (assoc, _, runit) = strict_parts(&base, sign_tensor_obj, sym("0"));
    let lunit = |a: &Atom| sign_arrow(a.as_str() == "1", a.as_str() == "1");
    monoidal_from(
        "V_sign-triangle",
        base.clone(),
        sym("0"),
        sign_tensor_obj,
        sign_tensor_arr,
        assoc,
        lunit,
        runit,
    )
}

/// V_sign with the associator twisted at the triple (0,1,1), which is not a
/// cocycle. Fails exactly the pentagon identity.
pub fn v_sign_pentagon_mutant() -> MonoidalStructure {
    let base = sign_base();
    let (_, lunit, runit) = strict_parts(&base, sign_tensor_obj, sym("0"));
    let assoc = |a: &Atom, b: &Atom, c: &Atom| {
        let twist = a.as_str() == "0" && b.as_str() == "1" && c.as_str() == "1";
        let parity = (a.as_str() == "1") ^ (b.as_str() == "1") ^ (c.as_str() == "1");
        sign_arrow(parity, twist)
    };
    monoidal_from(
        "V_sign-pentagon",
        base.clone(),
        sym("0"),
        sign_tensor_obj,
        sign_tensor_arr,
        assoc,
        lunit,
        runit,
    )
}

/// The parity groupoid with the non-trivial 3-cocycle as associator: the
/// component at (1,1,1) is the twist. A genuinely non-strict structure.
pub fn v_tw() -> MonoidalStructure {
    let base = sign_base();
    let (_, lunit, runit) = strict_parts(&base, sign_tensor_obj, sym("0"));
    let assoc = |a: &Atom, b: &Atom, c: &Atom| {
        let twist = a.as_str() == "1" && b.as_str() == "1" && c.as_str() == "1";
        let parity = (a.as_str() == "1") ^ (b.as_str() == "1") ^ (c.as_str() == "1");
        sign_arrow(parity, twist)
    };
    monoidal_from(
        "V_tw",
        base.clone(),
        sym("0"),
        sign_tensor_obj,
        sign_tensor_arr,
        assoc,
        lunit,
        runit,
    )
}

/// The parity groupoid with both unitors twisted everywhere; the triangle
/// still holds, so this is a valid structure with non-trivial unitors.
pub fn v_twu() -> MonoidalStructure {
    let base = sign_base();
    let (assoc, _, _) = strict_parts(&base, sign_tensor_obj, sym("0"));
    let lunit = |a: &Atom| sign_arrow(a.as_str() == "1", true);
    let runit = |a: &Atom| sign_arrow(a.as_str() == "1", true);
    monoidal_from(
        "V_twu",
        base.clone(),
        sym("0"),
        sign_tensor_obj,
        sign_tensor_arr,
        assoc,
        lunit,
        runit,
    )
}

/// The identity-with-twist monoidal endofunctor of `v_twu`: carrier functor
/// is the identity, but ε and every μ component are the twist.
pub fn twu_twist_functor() -> MonoidalFunctorData {
    let v = v_twu();
    let pairs = product(&v.base.obj, &v.base.obj).apex;
    let mu = FiniteMap::from_fn(&pairs, &v.base.arr, |p| {
        let (a, b) = p.unpair().unwrap();
        sign_arrow((a.as_str() == "1") ^ (b.as_str() == "1"), true)
    });
    MonoidalFunctorData::new(
        "twist",
        v.clone(),
        v.clone(),
        crate::internal_cat::identity_functor(&v.base),
        sign_arrow(false, true),
        mu,
    )
    .unwrap()
}

/// The only monoidal functor from the Boolean poset onto the meet delooping:
/// everything collapses onto the unit.
pub fn bool_to_meet_collapse() -> MonoidalFunctorData {
    let v = v_bool();
    let w = v_meet();
    let f = InternalFunctor::new(
        "collapse",
        v.base.clone(),
        w.base.clone(),
        FiniteMap::constant(&v.base.obj, &w.base.obj, &dot()),
        FiniteMap::constant(&v.base.arr, &w.base.arr, &sym("e")),
    )
    .unwrap();
    let pairs = product(&v.base.obj, &v.base.obj).apex;
    let mu = FiniteMap::constant(&pairs, &w.base.arr, &sym("e"));
    MonoidalFunctorData::new("F_collapse", v, w, f, sym("e"), mu).unwrap()
}

/// Brute-force preorder oracle: reflexive and transitive, checked directly on
/// the relation. Independent of the enriched checker.
pub fn relation_is_preorder(carrier: &FiniteSet, related: &[(Atom, Atom)]) -> bool {
    let has = |a: &Atom, b: &Atom| related.iter().any(|(x, y)| x == a && y == b);
    let reflexive = carrier.iter().all(|x| has(x, x));
    let transitive = related
        .iter()
        .all(|(a, b)| related.iter().all(|(b2, c)| b2 != b || has(a, c)));
    reflexive && transitive
}

/// Builds the V_bool enrichment induced by a relation. Composition and
/// identity entries that cannot be typed fall back to `i0`, so the checker
/// reports the violation instead of the constructor refusing the data.
pub fn enriched_from_relation(
    name: &str,
    carrier: &FiniteSet,
    related: &[(Atom, Atom)],
) -> EnrichedCategory {
    let v = v_bool();
    let has = |a: &Atom, b: &Atom| related.iter().any(|(x, y)| x == a && y == b);
    let truth = |b: bool| sym(if b { "1" } else { "0" });
    let pairs = product(carrier, carrier).apex;
    let hom = FiniteMap::from_fn(&pairs, &v.base.obj, |p| {
        let (a, b) = p.unpair().unwrap();
        truth(has(&a, &b))
    });
    let comp = FiniteMap::from_fn(&triple_apex(carrier), &v.base.arr, |t| {
        let (x0, x1, x2) = t.untriple().unwrap();
        let src = bool_min(&truth(has(&x1, &x2)), &truth(has(&x0, &x1)));
        let tgt = truth(has(&x0, &x2));
        bool_arrow(&src, &tgt).unwrap_or_else(|| sym("i0"))
    });
    let ident = FiniteMap::from_fn(carrier, &v.base.arr, |x| {
        bool_arrow(&sym("1"), &truth(has(x, x))).unwrap_or_else(|| sym("i0"))
    });
    EnrichedCategory::new(name, v, carrier.clone(), hom, comp, ident).unwrap()
}

pub fn chain3_carrier() -> FiniteSet {
    FiniteSet::new("P", vec![sym("p"), sym("q"), sym("r")])
}

/// The chain order p ≤ q ≤ r.
pub fn chain3_le(a: &Atom, b: &Atom) -> bool {
    a.as_str() <= b.as_str()
}

pub fn chain3_relation() -> Vec<(Atom, Atom)> {
    let carrier = chain3_carrier();
    carrier
        .pairs()
        .filter(|(a, b)| chain3_le(a, b))
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect()
}

/// The three-element chain as a V_bool enrichment.
pub fn preorder_chain3() -> EnrichedCategory {
    let mut x = enriched_from_relation("Chain3", &chain3_carrier(), &chain3_relation());
    x.name = "Chain3".into();
    x
}

/// Reflexive-only relation on two elements.
pub fn preorder_discrete2() -> EnrichedCategory {
    let carrier = FiniteSet::new("D", vec![sym("p"), sym("q")]);
    let related: Vec<(Atom, Atom)> = carrier.iter().map(|x| (x.clone(), x.clone())).collect();
    enriched_from_relation("Discrete2", &carrier, &related)
}

/// The indiscrete V_bool enrichment on two elements.
pub fn ind_bool2() -> EnrichedCategory {
    let carrier = FiniteSet::new("I2", vec![sym("p"), sym("q")]);
    indiscrete_enriched(&carrier, &v_bool()).unwrap()
}

/// Chain with the composite p ≤ r removed; fails typing at (p, q, r).
pub fn preorder_broken() -> EnrichedCategory {
    let related: Vec<(Atom, Atom)> = chain3_relation()
        .into_iter()
        .filter(|(a, b)| !(a.as_str() == "p" && b.as_str() == "r"))
        .collect();
    enriched_from_relation("Chain3-broken", &chain3_carrier(), &related)
}

/// The empty enrichment over V_bool.
pub fn empty_enriched() -> EnrichedCategory {
    let carrier = FiniteSet::empty("∅");
    let v = v_bool();
    let hom = FiniteMap::new(
        product(&carrier, &carrier).apex,
        v.base.obj.clone(),
        BTreeMap::new(),
    )
    .unwrap();
    let comp = FiniteMap::new(triple_apex(&carrier), v.base.arr.clone(), BTreeMap::new()).unwrap();
    let ident = FiniteMap::new(carrier.clone(), v.base.arr.clone(), BTreeMap::new()).unwrap();
    EnrichedCategory::new("Empty", v, carrier, hom, comp, ident).unwrap()
}

fn ab_carrier() -> FiniteSet {
    FiniteSet::new("X", vec![sym("a"), sym("b")])
}

fn z2_enriched(name: &str, comp: impl Fn(&Atom, &Atom, &Atom) -> Atom, ident: impl Fn(&Atom) -> Atom) -> EnrichedCategory {
    let v = v_z2();
    let carrier = ab_carrier();
    let hom = FiniteMap::constant(&product(&carrier, &carrier).apex, &v.base.obj, &dot());
    let comp_table = FiniteMap::from_fn(&triple_apex(&carrier), &v.base.arr, |t| {
        let (x0, x1, x2) = t.untriple().unwrap();
        comp(&x0, &x1, &x2)
    });
    let ident_table = FiniteMap::from_fn(&carrier, &v.base.arr, |x| ident(x));
    EnrichedCategory::new(name, v, carrier, hom, comp_table, ident_table).unwrap()
}

/// Trivial Z/2 enrichment on two elements.
pub fn x_z2() -> EnrichedCategory {
    z2_enriched("X_z2", |_, _, _| z2_e(), |_| z2_e())
}

/// The other valid constant pattern over Z/2: both composition and identity
/// are the swap.
pub fn x_z2_s() -> EnrichedCategory {
    z2_enriched("X_z2s", |_, _, _| z2_s(), |_| z2_s())
}

/// x_z2 with one composition entry flipped at a triple that no unit law
/// touches. Fails exactly associativity.
pub fn x_z2_assoc_mutant() -> EnrichedCategory {
    z2_enriched(
        "X_z2-assoc-mutant",
        |x0, x1, x2| {
            if x0.as_str() == "a" && x1.as_str() == "b" && x2.as_str() == "a" {
                z2_s()
            } else {
                z2_e()
            }
        },
        |_| z2_e(),
    )
}

/// x_z2 with one identity entry flipped. Fails exactly the unit laws.
pub fn x_z2_unit_mutant() -> EnrichedCategory {
    z2_enriched(
        "X_z2-unit-mutant",
        |_, _, _| z2_e(),
        |x| if x.as_str() == "a" { z2_s() } else { z2_e() },
    )
}

/// The swap functor on x_z2, with the parity-difference arrow component.
pub fn x_z2_swap_functor() -> EnrichedFunctor {
    let x = x_z2();
    let carrier = x.carrier.clone();
    let f0 = FiniteMap::from_fn(&carrier, &carrier, |e| {
        if e.as_str() == "a" {
            sym("b")
        } else {
            sym("a")
        }
    });
    let f1 = FiniteMap::from_fn(&product(&carrier, &carrier).apex, &x.v.base.arr, |p| {
        let (x0, x1) = p.unpair().unwrap();
        if x0 == x1 {
            z2_e()
        } else {
            z2_s()
        }
    });
    EnrichedFunctor::new("swap", x.clone(), x, f0, f1).unwrap()
}

/// The constant-swap transformation between identity functors of x_z2; its
/// component is constant, so it is natural.
pub fn x_z2_nat_const_s() -> EnrichedNat {
    let x = x_z2();
    let id = identity_enriched_functor(&x);
    let component = FiniteMap::constant(&x.carrier, &x.v.base.arr, &z2_s());
    EnrichedNat::new("const-s", id.clone(), id, component).unwrap()
}

/// A non-constant component between identity functors of x_z2. Fails exactly
/// naturality.
pub fn x_z2_nat_mutant() -> EnrichedNat {
    let x = x_z2();
    let id = identity_enriched_functor(&x);
    let component = FiniteMap::from_fn(&x.carrier, &x.v.base.arr, |e| {
        if e.as_str() == "a" {
            z2_s()
        } else {
            z2_e()
        }
    });
    EnrichedNat::new("nonconstant", id.clone(), id, component).unwrap()
}

fn parity_of(x: &Atom) -> bool {
    x.as_str() == "b"
}

/// Parity-graded enrichment over the strict parity groupoid: hom is the
/// parity difference.
pub fn x_sign() -> EnrichedCategory {
    let v = v_sign();
    let carrier = ab_carrier();
    let hom = FiniteMap::from_fn(&product(&carrier, &carrier).apex, &v.base.obj, |p| {
        let (x0, x1) = p.unpair().unwrap();
        sign_obj(parity_of(&x0) ^ parity_of(&x1))
    });
    let comp = FiniteMap::from_fn(&triple_apex(&carrier), &v.base.arr, |t| {
        let (x0, _, x2) = t.untriple().unwrap();
        sign_arrow(parity_of(&x0) ^ parity_of(&x2), false)
    });
    let ident = FiniteMap::constant(&carrier, &v.base.arr, &sign_arrow(false, false));
    EnrichedCategory::new("X_sign", v, carrier, hom, comp, ident).unwrap()
}

/// x_sign with one hom entry flipped; the composition tables no longer type.
pub fn x_sign_hom_mutant() -> EnrichedCategory {
    let good = x_sign();
    let mut table = good.hom.table().clone();
    table.insert(Atom::pair(&sym("a"), &sym("b")), sym("0"));
    let hom = FiniteMap::new(good.hom.dom().clone(), good.v.base.obj.clone(), table).unwrap();
    EnrichedCategory::new(
        "X_sign-hom-mutant",
        good.v,
        good.carrier,
        hom,
        good.comp,
        good.ident,
    )
    .unwrap()
}

/// Enrichment over the non-strict associator structure. The composition signs
/// solve the cocycle condition forced by the twisted associator.
pub fn x_tw() -> EnrichedCategory {
    let v = v_tw();
    let carrier = ab_carrier();
    let hom = FiniteMap::from_fn(&product(&carrier, &carrier).apex, &v.base.obj, |p| {
        let (x0, x1) = p.unpair().unwrap();
        sign_obj(parity_of(&x0) ^ parity_of(&x1))
    });
    let comp = FiniteMap::from_fn(&triple_apex(&carrier), &v.base.arr, |t| {
        let (x0, x1, x2) = t.untriple().unwrap();
        let (u, w, z) = (parity_of(&x0), parity_of(&x1), parity_of(&x2));
        sign_arrow(u ^ z, (u && w && z) ^ (u && z))
    });
    let ident = FiniteMap::constant(&carrier, &v.base.arr, &sign_arrow(false, false));
    EnrichedCategory::new("X_tw", v, carrier, hom, comp, ident).unwrap()
}

/// Enrichment over the non-strict unitor structure: trivial hom, trivial
/// composition, twisted identities.
pub fn x_twu() -> EnrichedCategory {
    let v = v_twu();
    let carrier = ab_carrier();
    let hom = FiniteMap::constant(&product(&carrier, &carrier).apex, &v.base.obj, &sym("0"));
    let comp = FiniteMap::constant(&triple_apex(&carrier), &v.base.arr, &sign_arrow(false, false));
    let ident = FiniteMap::constant(&carrier, &v.base.arr, &sign_arrow(false, true));
    EnrichedCategory::new("X_twu", v, carrier, hom, comp, ident).unwrap()
}

/// The indiscrete enrichment over the non-strict unitor structure; its
/// composition picks up the twisted unitor.
pub fn ind_twu() -> EnrichedCategory {
    indiscrete_enriched(&ab_carrier(), &v_twu()).unwrap()
}

/// The swap functor on x_twu.
pub fn x_twu_swap_functor() -> EnrichedFunctor {
    let x = x_twu();
    let carrier = x.carrier.clone();
    let f0 = FiniteMap::from_fn(&carrier, &carrier, |e| {
        if e.as_str() == "a" {
            sym("b")
        } else {
            sym("a")
        }
    });
    let f1 = FiniteMap::from_fn(&product(&carrier, &carrier).apex, &x.v.base.arr, |p| {
        let (x0, x1) = p.unpair().unwrap();
        sign_arrow(false, x0 != x1)
    });
    EnrichedFunctor::new("swap", x.clone(), x, f0, f1).unwrap()
}

/// Monotone collapse of the chain: q is sent down to p.
pub fn chain3_collapse_functor() -> EnrichedFunctor {
    let x = preorder_chain3();
    let carrier = x.carrier.clone();
    let f0 = FiniteMap::from_fn(&carrier, &carrier, |e| {
        if e.as_str() == "q" {
            sym("p")
        } else {
            e.clone()
        }
    });
    let truth = |b: bool| sym(if b { "1" } else { "0" });
    let f1 = {
        let f0 = f0.clone();
        FiniteMap::from_fn(&product(&carrier, &carrier).apex, &x.v.base.arr, move |p| {
            let (x0, x1) = p.unpair().unwrap();
            let src = truth(chain3_le(&x0, &x1));
            let tgt = truth(chain3_le(f0.apply(&x0), f0.apply(&x1)));
            bool_arrow(&src, &tgt).unwrap_or_else(|| sym("i0"))
        })
    };
    EnrichedFunctor::new("collapse-q", x.clone(), x, f0, f1).unwrap()
}

/// A non-monotone carrier map packaged as functor data; fails typing.
pub fn nonmonotone_mutant() -> EnrichedFunctor {
    let x = preorder_chain3();
    let carrier = x.carrier.clone();
    let f0 = FiniteMap::from_fn(&carrier, &carrier, |e| match e.as_str() {
        "p" => sym("r"),
        "r" => sym("p"),
        _ => e.clone(),
    });
    let truth = |b: bool| sym(if b { "1" } else { "0" });
    let f1 = {
        let f0 = f0.clone();
        FiniteMap::from_fn(&product(&carrier, &carrier).apex, &x.v.base.arr, move |p| {
            let (x0, x1) = p.unpair().unwrap();
            let src = truth(chain3_le(&x0, &x1));
            let tgt = truth(chain3_le(f0.apply(&x0), f0.apply(&x1)));
            bool_arrow(&src, &tgt).unwrap_or_else(|| sym("i0"))
        })
    };
    EnrichedFunctor::new("swap-pr", x.clone(), x, f0, f1).unwrap()
}

/// The shipped enriched corpus: at least eight instances over at least three
/// distinct enriching structures.
pub fn enriched_corpus() -> Vec<EnrichedCategory> {
    vec![
        preorder_chain3(),
        preorder_discrete2(),
        ind_bool2(),
        empty_enriched(),
        x_z2(),
        x_z2_s(),
        x_sign(),
        x_tw(),
        x_twu(),
        ind_twu(),
    ]
}

/// Enriched mutation fixtures whose broken entries violate typing; used by
/// the data-coincidence regression checks.
pub fn enriched_typing_mutants() -> Vec<EnrichedCategory> {
    vec![preorder_broken(), x_sign_hom_mutant()]
}

/// The canonical multicategory on a one-element carrier with one flattening
/// redirected to drop an inner block. The configuration sits inside larger
/// associativity instances but inside no unit instance, so exactly
/// associativity fails at bound 3.
pub fn ind_assoc_mutant() -> crate::multicat::FcMulticategory {
    let carrier = FiniteSet::new("U", vec![sym("u")]);
    let u = sym("u");
    let outer = Atom::list(&[u.clone(), u.clone(), u.clone()]);
    let inners = vec![
        Atom::list(&[u.clone(), u.clone(), u.clone()]),
        Atom::list(&[u.clone(), u.clone()]),
    ];
    let dropped = Atom::list(&[u.clone(), u.clone(), u]);
    crate::multicat::ind_multicat(&carrier).with_mcomp_override(&outer, &inners, dropped)
}

/// The one-object multicategory of the parity groupoid with the identity
/// assignment twisted at one object. Multicomposition never consults the
/// identity table, so exactly the unit laws fail.
pub fn mv_units_mutant() -> crate::multicat::FcMulticategory {
    let twisted = Atom::pair(&Atom::list(&[sym("1")]), &sign_arrow(true, true));
    crate::multicat::build_mv(&v_sign()).with_mids_override(&sym("1"), twisted)
}
