//! Internal monoidal categories, monoidal functors and monoidal natural
//! transformations, with coherence checkers.
//!
//! The associator is stored as a full component table over object triples
//! even when the structure is strict; strictness is detected, never assumed.
//! The unit is stored both as an object atom and as a functor from the
//! terminal category, and consistency between the two is a checked axiom.

use crate::ambient::{product, Atom, FiniteMap, FiniteSet};
use crate::error::Error;
use crate::internal_cat::{
    check_functor, check_nat, identity_functor, product_cat, terminal_cat, InternalCategory,
    InternalFunctor, InternalNat,
};
use crate::report::{Axiom, CheckOptions, CheckReport};
use crate::Result;

/// An internal monoidal category: a base category with tensor, unit,
/// associator and unitor component tables.
#[derive(Debug, Clone)]
pub struct MonoidalStructure {
    pub name: String,
    pub base: InternalCategory,
    /// Tensor functor from the pointwise product of the base with itself.
    pub tensor: InternalFunctor,
    pub unit_obj: Atom,
    /// The unit as a functor from the terminal category; must agree with
    /// `unit_obj`.
    pub unit_functor: InternalFunctor,
    /// Associator components over left-nested object triples `⟨⟨a,b⟩,c⟩`.
    pub assoc: FiniteMap,
    /// Left unitor components `λ(a) : I⊗a → a`.
    pub lunit: FiniteMap,
    /// Right unitor components `ρ(a) : a⊗I → a`.
    pub runit: FiniteMap,
}

impl PartialEq for MonoidalStructure {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.tensor == other.tensor
            && self.unit_obj == other.unit_obj
            && self.unit_functor == other.unit_functor
            && self.assoc == other.assoc
            && self.lunit == other.lunit
            && self.runit == other.runit
    }
}
impl Eq for MonoidalStructure {}

impl MonoidalStructure {
    pub fn new(
        name: impl Into<String>,
        base: InternalCategory,
        tensor: InternalFunctor,
        unit_obj: Atom,
        assoc: FiniteMap,
        lunit: FiniteMap,
        runit: FiniteMap,
    ) -> Result<MonoidalStructure> {
        let name = name.into();
        let squared = product_cat(&base, &base);
        if tensor.dom != squared || tensor.cod != base {
            return Err(Error::MalformedData(
                "tensor must be a functor from the squared base to the base".into(),
            ));
        }
        if !base.obj.contains(&unit_obj) {
            return Err(Error::MalformedData(format!(
                "unit object {unit_obj} is not an object of the base"
            )));
        }
        let triples = triple_apex(&base.obj);
        if *assoc.dom() != triples || *assoc.cod() != base.arr {
            return Err(Error::MalformedData(
                "associator must be a table over object triples valued in arrows".into(),
            ));
        }
        for table in [&lunit, &runit] {
            if *table.dom() != base.obj || *table.cod() != base.arr {
                return Err(Error::MalformedData(
                    "unitors must be tables over objects valued in arrows".into(),
                ));
            }
        }
        let one = terminal_cat();
        let unit_functor = InternalFunctor::new(
            format!("I_{name}"),
            one.clone(),
            base.clone(),
            FiniteMap::constant(&one.obj, &base.obj, &unit_obj),
            FiniteMap::constant(&one.arr, &base.arr, base.id_of(&unit_obj)),
        )?;
        Ok(MonoidalStructure {
            name,
            base,
            tensor,
            unit_obj,
            unit_functor,
            assoc,
            lunit,
            runit,
        })
    }

    /// Replaces the derived unit functor; used when fixtures supply one
    /// explicitly so the consistency axiom has something to catch.
    pub fn with_unit_functor(mut self, unit_functor: InternalFunctor) -> Self {
        self.unit_functor = unit_functor;
        self
    }

    pub fn tensor_obj(&self, a: &Atom, b: &Atom) -> Atom {
        self.tensor.apply_obj(&Atom::pair(a, b)).clone()
    }

    pub fn tensor_arr(&self, f: &Atom, g: &Atom) -> Atom {
        self.tensor.apply_arr(&Atom::pair(f, g)).clone()
    }

    /// `g` after `f` in the base category.
    pub fn compose(&self, g: &Atom, f: &Atom) -> Result<Atom> {
        self.base.compose(g, f)
    }

    pub fn id_arr(&self, a: &Atom) -> Atom {
        self.base.id_of(a).clone()
    }

    pub fn assoc_at(&self, a: &Atom, b: &Atom, c: &Atom) -> Atom {
        self.assoc.apply(&Atom::triple(a, b, c)).clone()
    }

    pub fn lunit_at(&self, a: &Atom) -> Atom {
        self.lunit.apply(a).clone()
    }

    pub fn runit_at(&self, a: &Atom) -> Atom {
        self.runit.apply(a).clone()
    }

    pub fn src_of(&self, f: &Atom) -> &Atom {
        self.base.src.apply(f)
    }

    pub fn tgt_of(&self, f: &Atom) -> &Atom {
        self.base.tgt.apply(f)
    }

    /// Two-sided inverse of an arrow, or an error when there is none.
    pub fn inverse_of(&self, f: &Atom) -> Result<Atom> {
        self.base
            .find_inverse(f)
            .ok_or_else(|| Error::MalformedData(format!("arrow {f} has no two-sided inverse")))
    }

    /// Left-nested tensor of a word in display order: `[a,b,c]` evaluates to
    /// `(a⊗b)⊗c`, the empty word to the unit.
    pub fn fold_display(&self, word: &[Atom]) -> Atom {
        match word.split_first() {
            None => self.unit_obj.clone(),
            Some((first, rest)) => rest
                .iter()
                .fold(first.clone(), |acc, x| self.tensor_obj(&acc, x)),
        }
    }

    /// Tensor of an object list stored in path order. The first list entry is
    /// the rightmost tensor factor, so `[v1,v2,v3]` evaluates to `(v3⊗v2)⊗v1`.
    pub fn fold_objects(&self, list: &[Atom]) -> Atom {
        let word: Vec<Atom> = list.iter().rev().cloned().collect();
        self.fold_display(&word)
    }

    pub fn eval_tree(&self, t: &TensorTree) -> Atom {
        match t {
            TensorTree::Unit => self.unit_obj.clone(),
            TensorTree::Leaf(a) => a.clone(),
            TensorTree::Node(l, r) => self.tensor_obj(&self.eval_tree(l), &self.eval_tree(r)),
        }
    }

    /// Canonical structural isomorphism `eval(t) → fold_display(frontier(t))`
    /// assembled from associator and unitor components. Unit leaves are
    /// eliminated; fails only if a required component is not invertible.
    pub fn normalize_tree(&self, t: &TensorTree) -> Result<Atom> {
        match t {
            TensorTree::Unit => Ok(self.id_arr(&self.unit_obj)),
            TensorTree::Leaf(a) => Ok(self.id_arr(a)),
            TensorTree::Node(l, r) => {
                let nl = self.normalize_tree(l)?;
                let nr = self.normalize_tree(r)?;
                let step = self.tensor_arr(&nl, &nr);
                let fl = l.frontier();
                let fr = r.frontier();
                let merge = self.merge_iso(&fl, &fr)?;
                self.compose(&merge, &step)
            }
        }
    }

    /// Canonical iso `fold(fl) ⊗ fold(fr) → fold(fl ++ fr)` for display-order
    /// words.
    fn merge_iso(&self, fl: &[Atom], fr: &[Atom]) -> Result<Atom> {
        let left_val = self.fold_display(fl);
        if fr.is_empty() {
            return Ok(self.runit_at(&left_val));
        }
        if fl.is_empty() {
            return Ok(self.lunit_at(&self.fold_display(fr)));
        }
        if fr.len() == 1 {
            return Ok(self.id_arr(&self.tensor_obj(&left_val, &fr[0])));
        }
        let (last, front) = fr.split_last().unwrap();
        let front_val = self.fold_display(front);
        // fold(fl) ⊗ (fold(fr') ⊗ b)  →  (fold(fl) ⊗ fold(fr')) ⊗ b  →  fold(fl++fr') ⊗ b
        let reassoc = self.inverse_of(&self.assoc_at(&left_val, &front_val, last))?;
        let merged_front = self.merge_iso(fl, front)?;
        let step = self.tensor_arr(&merged_front, &self.id_arr(last));
        self.compose(&step, &reassoc)
    }
}

/// Left-nested apex of object triples, keyed `⟨⟨a,b⟩,c⟩`.
pub fn triple_apex(s: &FiniteSet) -> FiniteSet {
    product(&product(s, s).apex, s).apex
}

/// A bracketed tensor word. Unit leaves evaluate to the monoidal unit and
/// contribute nothing to the frontier; they record where an empty block sits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorTree {
    Unit,
    Leaf(Atom),
    Node(Box<TensorTree>, Box<TensorTree>),
}

impl TensorTree {
    /// Left-nested tree over subtrees in display order; empty input is the
    /// unit leaf.
    pub fn left_nested(parts: Vec<TensorTree>) -> TensorTree {
        let mut iter = parts.into_iter();
        match iter.next() {
            None => TensorTree::Unit,
            Some(first) => iter.fold(first, |acc, t| {
                TensorTree::Node(Box::new(acc), Box::new(t))
            }),
        }
    }

    pub fn leaf_word(word: &[Atom]) -> TensorTree {
        TensorTree::left_nested(word.iter().cloned().map(TensorTree::Leaf).collect())
    }

    pub fn frontier(&self) -> Vec<Atom> {
        match self {
            TensorTree::Unit => Vec::new(),
            TensorTree::Leaf(a) => vec![a.clone()],
            TensorTree::Node(l, r) => {
                let mut f = l.frontier();
                f.extend(r.frontier());
                f
            }
        }
    }
}

/// Checks the monoidal axioms: tensor functoriality, unit consistency,
/// typing/naturality/invertibility of the structural transformations, and the
/// triangle and pentagon identities.
pub fn check_monoidal(v: &MonoidalStructure, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&v.name);
    let objs = &v.base.obj;

    for entry in check_functor(&v.tensor, opts).entries {
        let mut renamed = entry;
        renamed.axiom = format!("tensor-{}", renamed.axiom);
        report.entries.push(renamed);
    }

    let mut unit = Axiom::new("unit-consistency", opts);
    {
        let star = crate::ambient::star();
        if v.unit_functor.apply_obj(&star) != &v.unit_obj
            || v.unit_functor.apply_arr(&star) != v.base.id_of(&v.unit_obj)
        {
            unit.fail(&[&v.unit_obj]);
        }
    }
    report.push(unit);

    // Associator: typing, naturality, invertibility.
    let mut typing = Axiom::new("assoc-typing", opts);
    let mut invert = Axiom::new("assoc-invertibility", opts);
    for key in v.assoc.dom().iter() {
        let (a, b, c) = key.untriple().unwrap();
        let comp = v.assoc.apply(key);
        let want_src = v.tensor_obj(&v.tensor_obj(&a, &b), &c);
        let want_tgt = v.tensor_obj(&a, &v.tensor_obj(&b, &c));
        if v.src_of(comp) != &want_src || v.tgt_of(comp) != &want_tgt {
            typing.fail(&[&a, &b, &c, comp]);
        } else if v.base.find_inverse(comp).is_none() {
            invert.fail(&[&a, &b, &c, comp]);
        }
    }
    report.push(typing);
    report.push(invert);

    let mut nat = Axiom::new("assoc-naturality", opts);
    for f in v.base.arr.iter() {
        for g in v.base.arr.iter() {
            for h in v.base.arr.iter() {
                let (a, b, c) = (v.src_of(f), v.src_of(g), v.src_of(h));
                let (a2, b2, c2) = (v.tgt_of(f), v.tgt_of(g), v.tgt_of(h));
                let lhs = v.compose(
                    &v.assoc_at(a2, b2, c2),
                    &v.tensor_arr(&v.tensor_arr(f, g), h),
                );
                let rhs = v.compose(
                    &v.tensor_arr(f, &v.tensor_arr(g, h)),
                    &v.assoc_at(a, b, c),
                );
                match (lhs, rhs) {
                    (Ok(x), Ok(y)) if x == y => {}
                    _ => nat.fail(&[f, g, h]),
                }
            }
        }
    }
    report.push(nat);

    // Unitors: typing, naturality, invertibility.
    for (id, table, is_left) in [("lunit", &v.lunit, true), ("runit", &v.runit, false)] {
        let mut typing = Axiom::new(&format!("{id}-typing"), opts);
        let mut invert = Axiom::new(&format!("{id}-invertibility"), opts);
        for a in objs.iter() {
            let comp = table.apply(a);
            let want_src = if is_left {
                v.tensor_obj(&v.unit_obj, a)
            } else {
                v.tensor_obj(a, &v.unit_obj)
            };
            if v.src_of(comp) != &want_src || v.tgt_of(comp) != a {
                typing.fail(&[a, comp]);
            } else if v.base.find_inverse(comp).is_none() {
                invert.fail(&[a, comp]);
            }
        }
        report.push(typing);
        report.push(invert);

        let mut nat = Axiom::new(&format!("{id}-naturality"), opts);
        let unit_id = v.id_arr(&v.unit_obj);
        for f in v.base.arr.iter() {
            let a = v.src_of(f);
            let a2 = v.tgt_of(f);
            let padded = if is_left {
                v.tensor_arr(&unit_id, f)
            } else {
                v.tensor_arr(f, &unit_id)
            };
            let lhs = v.compose(table.apply(a2), &padded);
            let rhs = v.compose(f, table.apply(a));
            match (lhs, rhs) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => nat.fail(&[f]),
            }
        }
        report.push(nat);
    }

    let mut triangle = Axiom::new("triangle", opts);
    for a in objs.iter() {
        for b in objs.iter() {
            let lhs = v.compose(
                &v.tensor_arr(&v.id_arr(a), &v.lunit_at(b)),
                &v.assoc_at(a, &v.unit_obj, b),
            );
            let rhs = v.tensor_arr(&v.runit_at(a), &v.id_arr(b));
            match lhs {
                Ok(x) if x == rhs => {}
                _ => triangle.fail(&[a, b]),
            }
        }
    }
    report.push(triangle);

    let mut pentagon = Axiom::new("pentagon", opts);
    for a in objs.iter() {
        for b in objs.iter() {
            for c in objs.iter() {
                for d in objs.iter() {
                    let ab = v.tensor_obj(a, b);
                    let cd = v.tensor_obj(c, d);
                    let bc = v.tensor_obj(b, c);
                    let lhs = v.compose(&v.assoc_at(a, b, &cd), &v.assoc_at(&ab, c, d));
                    let rhs = v
                        .compose(&v.assoc_at(a, &bc, d), &v.tensor_arr(&v.assoc_at(a, b, c), &v.id_arr(d)))
                        .and_then(|inner| {
                            v.compose(&v.tensor_arr(&v.id_arr(a), &v.assoc_at(b, c, d)), &inner)
                        });
                    match (lhs, rhs) {
                        (Ok(x), Ok(y)) if x == y => {}
                        _ => pentagon.fail(&[a, b, c, d]),
                    }
                }
            }
        }
    }
    report.push(pentagon);

    report
}

/// A monoidal functor: an internal functor with unit and tensor coherence
/// isomorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalFunctorData {
    pub name: String,
    pub dom_v: MonoidalStructure,
    pub cod_v: MonoidalStructure,
    pub f: InternalFunctor,
    /// Unit coherence: an arrow `I_W → F(I_V)` of the codomain base.
    pub eps: Atom,
    /// Tensor coherence components `μ(a,b) : F(a)⊗F(b) → F(a⊗b)` over object
    /// pairs of the domain base.
    pub mu: FiniteMap,
}

impl MonoidalFunctorData {
    pub fn new(
        name: impl Into<String>,
        dom_v: MonoidalStructure,
        cod_v: MonoidalStructure,
        f: InternalFunctor,
        eps: Atom,
        mu: FiniteMap,
    ) -> Result<MonoidalFunctorData> {
        if f.dom != dom_v.base || f.cod != cod_v.base {
            return Err(Error::EndpointMismatch(
                "monoidal functor endpoints do not match its carrier functor".into(),
            ));
        }
        if !cod_v.base.arr.contains(&eps) {
            return Err(Error::MalformedData("ε must be an arrow of the codomain".into()));
        }
        let pairs = product(&dom_v.base.obj, &dom_v.base.obj).apex;
        if *mu.dom() != pairs || *mu.cod() != cod_v.base.arr {
            return Err(Error::MalformedData(
                "μ must be a table over domain object pairs valued in codomain arrows".into(),
            ));
        }
        Ok(MonoidalFunctorData {
            name: name.into(),
            dom_v,
            cod_v,
            f,
            eps,
            mu,
        })
    }

    pub fn mu_at(&self, a: &Atom, b: &Atom) -> Atom {
        self.mu.apply(&Atom::pair(a, b)).clone()
    }
}

pub fn identity_monoidal_functor(v: &MonoidalStructure) -> MonoidalFunctorData {
    let pairs = product(&v.base.obj, &v.base.obj).apex;
    let mu = FiniteMap::from_fn(&pairs, &v.base.arr, |p| {
        let (a, b) = p.unpair().unwrap();
        v.id_arr(&v.tensor_obj(&a, &b))
    });
    MonoidalFunctorData::new(
        format!("id_{}", v.name),
        v.clone(),
        v.clone(),
        identity_functor(&v.base),
        v.id_arr(&v.unit_obj),
        mu,
    )
    .unwrap()
}

pub fn check_monoidal_functor(d: &MonoidalFunctorData, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&d.name);
    let v = &d.dom_v;
    let w = &d.cod_v;

    for entry in check_functor(&d.f, opts).entries {
        let mut renamed = entry;
        renamed.axiom = format!("functor-{}", renamed.axiom);
        report.entries.push(renamed);
    }

    let mut eps = Axiom::new("unit-coherence-typing", opts);
    let f_unit = d.f.apply_obj(&v.unit_obj);
    if w.src_of(&d.eps) != &w.unit_obj
        || w.tgt_of(&d.eps) != f_unit
        || w.base.find_inverse(&d.eps).is_none()
    {
        eps.fail(&[&d.eps]);
    }
    report.push(eps);

    let mut mu_typing = Axiom::new("tensor-coherence-typing", opts);
    for key in d.mu.dom().iter() {
        let (a, b) = key.unpair().unwrap();
        let comp = d.mu.apply(key);
        let want_src = w.tensor_obj(d.f.apply_obj(&a), d.f.apply_obj(&b));
        let want_tgt = d.f.apply_obj(&v.tensor_obj(&a, &b));
        if w.src_of(comp) != &want_src
            || w.tgt_of(comp) != want_tgt
            || w.base.find_inverse(comp).is_none()
        {
            mu_typing.fail(&[&a, &b, comp]);
        }
    }
    report.push(mu_typing);

    let mut mu_nat = Axiom::new("tensor-coherence-naturality", opts);
    for f in v.base.arr.iter() {
        for g in v.base.arr.iter() {
            let (a, b) = (v.src_of(f), v.src_of(g));
            let (a2, b2) = (v.tgt_of(f), v.tgt_of(g));
            let lhs = w.compose(
                &d.mu_at(a2, b2),
                &w.tensor_arr(d.f.apply_arr(f), d.f.apply_arr(g)),
            );
            let rhs = w.compose(d.f.apply_arr(&v.tensor_arr(f, g)), &d.mu_at(a, b));
            match (lhs, rhs) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => mu_nat.fail(&[f, g]),
            }
        }
    }
    report.push(mu_nat);

    let mut hexagon = Axiom::new("associativity-coherence", opts);
    for a in v.base.obj.iter() {
        for b in v.base.obj.iter() {
            for c in v.base.obj.iter() {
                let fa = d.f.apply_obj(a);
                let fb = d.f.apply_obj(b);
                let fc = d.f.apply_obj(c);
                let ab = v.tensor_obj(a, b);
                let bc = v.tensor_obj(b, c);
                let lhs = w
                    .compose(&d.mu_at(&ab, c), &w.tensor_arr(&d.mu_at(a, b), &w.id_arr(fc)))
                    .and_then(|inner| {
                        w.compose(d.f.apply_arr(&v.assoc_at(a, b, c)), &inner)
                    });
                let rhs = w
                    .compose(
                        &w.tensor_arr(&w.id_arr(fa), &d.mu_at(b, c)),
                        &w.assoc_at(fa, fb, fc),
                    )
                    .and_then(|inner| w.compose(&d.mu_at(a, &bc), &inner));
                match (lhs, rhs) {
                    (Ok(x), Ok(y)) if x == y => {}
                    _ => hexagon.fail(&[a, b, c]),
                }
            }
        }
    }
    report.push(hexagon);

    let mut left = Axiom::new("left-unit-coherence", opts);
    let mut right = Axiom::new("right-unit-coherence", opts);
    for a in v.base.obj.iter() {
        let fa = d.f.apply_obj(a);
        let lhs = w.lunit_at(fa);
        let rhs = w
            .compose(&d.mu_at(&v.unit_obj, a), &w.tensor_arr(&d.eps, &w.id_arr(fa)))
            .and_then(|inner| w.compose(d.f.apply_arr(&v.lunit_at(a)), &inner));
        match rhs {
            Ok(x) if x == lhs => {}
            _ => left.fail(&[a]),
        }
        let lhs = w.runit_at(fa);
        let rhs = w
            .compose(&d.mu_at(a, &v.unit_obj), &w.tensor_arr(&w.id_arr(fa), &d.eps))
            .and_then(|inner| w.compose(d.f.apply_arr(&v.runit_at(a)), &inner));
        match rhs {
            Ok(x) if x == lhs => {}
            _ => right.fail(&[a]),
        }
    }
    report.push(left);
    report.push(right);

    report
}

/// A monoidal natural transformation between monoidal functors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalNatData {
    pub name: String,
    pub dom_f: MonoidalFunctorData,
    pub cod_f: MonoidalFunctorData,
    pub n: InternalNat,
}

impl MonoidalNatData {
    pub fn new(
        name: impl Into<String>,
        dom_f: MonoidalFunctorData,
        cod_f: MonoidalFunctorData,
        n: InternalNat,
    ) -> Result<MonoidalNatData> {
        if dom_f.dom_v != cod_f.dom_v || dom_f.cod_v != cod_f.cod_v {
            return Err(Error::EndpointMismatch(
                "monoidal transformation needs parallel monoidal functors".into(),
            ));
        }
        if n.src_f != dom_f.f || n.tgt_f != cod_f.f {
            return Err(Error::EndpointMismatch(
                "carrier transformation endpoints do not match the monoidal functors".into(),
            ));
        }
        Ok(MonoidalNatData {
            name: name.into(),
            dom_f,
            cod_f,
            n,
        })
    }
}

pub fn check_monoidal_nat(d: &MonoidalNatData, opts: &CheckOptions) -> CheckReport {
    let mut report = CheckReport::new(&d.name);
    let v = &d.dom_f.dom_v;
    let w = &d.dom_f.cod_v;

    for entry in check_nat(&d.n, opts).entries {
        let mut renamed = entry;
        renamed.axiom = format!("nat-{}", renamed.axiom);
        report.entries.push(renamed);
    }

    let mut tensor_compat = Axiom::new("tensor-compatibility", opts);
    for a in v.base.obj.iter() {
        for b in v.base.obj.iter() {
            let ab = v.tensor_obj(a, b);
            let lhs = w.compose(&d.cod_f.mu_at(a, b), &w.tensor_arr(d.n.at(a), d.n.at(b)));
            let rhs = w.compose(d.n.at(&ab), &d.dom_f.mu_at(a, b));
            match (lhs, rhs) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => tensor_compat.fail(&[a, b]),
            }
        }
    }
    report.push(tensor_compat);

    let mut unit_compat = Axiom::new("unit-compatibility", opts);
    let lhs = w.compose(d.n.at(&v.unit_obj), &d.dom_f.eps);
    match lhs {
        Ok(x) if x == d.cod_f.eps => {}
        _ => unit_compat.fail(&[&v.unit_obj]),
    }
    report.push(unit_compat);

    report
}

/// Detects a strict structure: all associator and unitor components are
/// identities.
pub fn is_strict(v: &MonoidalStructure) -> bool {
    v.assoc
        .table()
        .values()
        .chain(v.lunit.table().values())
        .chain(v.runit.table().values())
        .all(|f| {
            let s = v.src_of(f);
            v.tgt_of(f) == s && f == v.base.id_of(s)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn opts() -> CheckOptions {
        CheckOptions::default()
    }

    #[test]
    fn corpus_monoidal_structures_pass() {
        for v in [
            corpus::v_bool(),
            corpus::v_meet(),
            corpus::v_z2(),
            corpus::v_sign(),
            corpus::v_tw(),
            corpus::v_twu(),
        ] {
            let report = check_monoidal(&v, &opts());
            assert!(report.passed(), "{}: {:?}", v.name, report.failed_axioms());
        }
    }

    #[test]
    fn strictness_detection() {
        assert!(is_strict(&corpus::v_bool()));
        assert!(is_strict(&corpus::v_sign()));
        assert!(!is_strict(&corpus::v_tw()));
        assert!(!is_strict(&corpus::v_twu()));
    }

    #[test]
    fn bool_max_mutant_fails_left_unitor_at_zero() {
        let v = corpus::v_bool_max_mutant();
        let report = check_monoidal(&v, &opts());
        assert!(!report.passed());
        let typing = report.axiom("lunit-typing").unwrap();
        assert!(!typing.passed());
        assert!(typing.witnesses[0].starts_with("(0"), "{:?}", typing.witnesses);
        // The tensor itself is still a functor.
        assert!(report.axiom("tensor-identity-preservation").unwrap().passed());
        assert!(report.axiom("tensor-composition-preservation").unwrap().passed());
    }

    #[test]
    fn triangle_mutant_fails_exactly_triangle() {
        let v = corpus::v_sign_triangle_mutant();
        let report = check_monoidal(&v, &opts());
        assert_eq!(report.failed_axioms(), vec!["triangle"]);
        assert!(report.axiom("triangle").unwrap().witnesses[0].contains("1"));
    }

    #[test]
    fn pentagon_mutant_fails_exactly_pentagon() {
        let v = corpus::v_sign_pentagon_mutant();
        let report = check_monoidal(&v, &opts());
        assert_eq!(report.failed_axioms(), vec!["pentagon"]);
    }

    /// For strict structures the checker verdict matches an independent
    /// brute-force monoid validator on the object tensor table.
    #[test]
    fn strict_check_matches_monoid_oracle() {
        // The object-level tensor of a strict passing structure is an
        // associative unital operation, and conversely a broken object table
        // must fail the checker.
        for v in [corpus::v_bool(), corpus::v_meet(), corpus::v_z2(), corpus::v_sign()] {
            assert!(is_strict(&v));
            assert!(check_monoidal(&v, &opts()).passed());
            assert!(object_table_is_monoid(&v), "{}", v.name);
        }

        // Mutate the object tensor of V_bool into a non-associative table and
        // confirm both the oracle and the checker reject it.
        let broken = corpus::v_bool_tensor_obj_mutant();
        assert!(!object_table_is_monoid(&broken));
        assert!(!check_monoidal(&broken, &opts()).passed());
    }

    fn object_table_is_monoid(v: &MonoidalStructure) -> bool {
        let objs = &v.base.obj;
        let op = |a: &Atom, b: &Atom| v.tensor_obj(a, b);
        let unital = objs
            .iter()
            .all(|a| op(&v.unit_obj, a) == *a && op(a, &v.unit_obj) == *a);
        let associative = objs.iter().all(|a| {
            objs.iter().all(|b| {
                objs.iter()
                    .all(|c| op(&op(a, b), c) == op(a, &op(b, c)))
            })
        });
        unital && associative
    }

    #[test]
    fn identity_monoidal_functor_passes() {
        for v in [corpus::v_bool(), corpus::v_tw(), corpus::v_twu()] {
            let d = identity_monoidal_functor(&v);
            let report = check_monoidal_functor(&d, &opts());
            assert!(report.passed(), "{}: {:?}", v.name, report.failed_axioms());
        }
    }

    #[test]
    fn twist_functor_passes() {
        let d = corpus::twu_twist_functor();
        let report = check_monoidal_functor(&d, &opts());
        assert!(report.passed(), "{:?}", report.failed_axioms());
    }

    #[test]
    fn collapse_functor_bool_to_meet_passes() {
        let d = corpus::bool_to_meet_collapse();
        let report = check_monoidal_functor(&d, &opts());
        assert!(report.passed(), "{:?}", report.failed_axioms());
    }

    #[test]
    fn broken_endofunctor_fails_functoriality() {
        // Collapsing u to an identity on V_bool breaks source/target
        // preservation.
        let v = corpus::v_bool();
        let f1 = FiniteMap::from_fn(&v.base.arr, &v.base.arr, |f| {
            if f == &Atom::sym("u") {
                Atom::sym("i0")
            } else {
                f.clone()
            }
        });
        let f = InternalFunctor::new("collapse-u", v.base.clone(), v.base.clone(),
            FiniteMap::identity(&v.base.obj), f1).unwrap();
        let d = MonoidalFunctorData::new(
            "broken",
            v.clone(),
            v.clone(),
            f,
            v.id_arr(&v.unit_obj),
            identity_monoidal_functor(&v).mu,
        )
        .unwrap();
        let report = check_monoidal_functor(&d, &opts());
        assert!(!report.axiom("functor-source-target-preservation").unwrap().passed());
        let witness = &report.axiom("functor-source-target-preservation").unwrap().witnesses[0];
        assert!(witness.contains("u"), "{witness}");
    }

    #[test]
    fn identity_monoidal_nat_passes() {
        let v = corpus::v_twu();
        let d = identity_monoidal_functor(&v);
        let nat = crate::internal_cat::identity_nat(&d.f);
        let m = MonoidalNatData::new("id", d.clone(), d, nat).unwrap();
        assert!(check_monoidal_nat(&m, &opts()).passed());
    }

    #[test]
    fn normalize_tree_on_nonstrict_structure() {
        // Reassociating ((a⊗b)⊗c) against blocks must produce honest isos in
        // the twisted structure.
        let v = corpus::v_tw();
        let one = Atom::sym("1");
        let word = vec![one.clone(), one.clone(), one.clone()];
        let flat = TensorTree::leaf_word(&word);
        let n = v.normalize_tree(&flat).unwrap();
        assert!(n == v.id_arr(&v.fold_display(&word)));
        // Tree ((1⊗1)⊗(1⊗1)) over the word [1,1,1,1] differs from the
        // left-nested fold by a genuine associator component.
        let block = TensorTree::leaf_word(&[one.clone(), one.clone()]);
        let t = TensorTree::Node(Box::new(block.clone()), Box::new(block));
        let iso = v.normalize_tree(&t).unwrap();
        assert_eq!(v.src_of(&iso), &v.eval_tree(&t));
        assert_eq!(v.tgt_of(&iso), &v.fold_display(&[one.clone(), one.clone(), one.clone(), one]));
        assert!(v.base.find_inverse(&iso).is_some());
    }

    #[test]
    fn unit_functor_consistency_is_checked() {
        let v = corpus::v_z2();
        let one = terminal_cat();
        // Replace the unit functor's arrow part with the wrong monoid element.
        let wrong = InternalFunctor::new(
            "bad-unit",
            one.clone(),
            v.base.clone(),
            FiniteMap::constant(&one.obj, &v.base.obj, &v.unit_obj),
            FiniteMap::constant(&one.arr, &v.base.arr, &corpus::z2_s()),
        )
        .unwrap();
        let broken = v.with_unit_functor(wrong);
        let report = check_monoidal(&broken, &opts());
        assert_eq!(report.failed_axioms(), vec!["unit-consistency"]);
    }
}
