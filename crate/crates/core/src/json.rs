//! Canonical JSON forms and DOT drawings.
//!
//! Cells are referred to by label. Keys come out sorted (serde_json's map is
//! ordered), so writing is byte-stable, and reading then writing a canonical
//! document reproduces it. A label repeated within one kind of cell is
//! written with a `#index` suffix; labels read back must be unique.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{Display, Write as _};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cat::{discrete, product, FinCat, FinFunctor, FinPoset, PosetInclusion};
use crate::dblcat::{box_product, DblFunctor, FinDblCat};
use crate::error::{Error, Result, Violation};
use crate::groth::{DblDiagram, Diagram};
use crate::pushout::{DblSievePushoutSpec, SievePushoutSpec};
use crate::sset::{SimplicialMap, TruncSSet};

/// Types with a canonical JSON form.
pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

/// Parses text, reporting the line and column of a syntax error.
pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

/// Pretty-printed with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// What a JSON document encodes, read off its top-level keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Category,
    Poset,
    SimplicialSet,
    DoubleCategory,
    Functor,
    DoubleFunctor,
    SimplicialMap,
    SievePushoutSpec,
    DblSievePushoutSpec,
    Diagram,
    DblDiagram,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::Poset => "poset",
            Kind::SimplicialSet => "simplicial set",
            Kind::DoubleCategory => "double category",
            Kind::Functor => "functor",
            Kind::DoubleFunctor => "double functor",
            Kind::SimplicialMap => "simplicial map",
            Kind::SievePushoutSpec => "sieve pushout spec",
            Kind::DblSievePushoutSpec => "double sieve pushout spec",
            Kind::Diagram => "diagram",
            Kind::DblDiagram => "double diagram",
        }
    }
}

pub fn detect(v: &Value) -> Option<Kind> {
    let has = |k: &str| v.get(k).is_some();
    Some(if has("A0") {
        Kind::DoubleCategory
    } else if has("trunc") {
        Kind::SimplicialSet
    } else if has("elements") {
        Kind::Poset
    } else if has("compose") {
        Kind::Category
    } else if has("set") && has("A") {
        Kind::SievePushoutSpec
    } else if has("C") && has("A") {
        Kind::DblSievePushoutSpec
    } else if has("source") && has("levels") {
        Kind::SimplicialMap
    } else if has("source") && has("squares") {
        Kind::DoubleFunctor
    } else if has("source") && has("objects") {
        Kind::Functor
    } else if has("shape") && has("values") {
        let dbl = v["values"].as_object().and_then(|m| m.values().next()).is_some_and(|x| x.get("A0").is_some());
        if dbl {
            Kind::DblDiagram
        } else {
            Kind::Diagram
        }
    } else {
        return None;
    })
}

/// Reads a document of any [`Kind`] and lists the axioms it breaks. Laws
/// a constructor refuses to build past come back as violations too; only
/// malformed documents are errors.
pub fn validate_document(v: &Value) -> Result<(Kind, Vec<Violation>)> {
    let kind = detect(v).ok_or_else(|| bad("$", "unrecognised document"))?;
    let found = match kind {
        Kind::Category => FinCat::from_json(v).map(|c| c.validate()),
        Kind::Poset => FinPoset::from_json(v).map(|_| vec![]),
        Kind::SimplicialSet => TruncSSet::from_json(v).map(|x| x.validate()),
        Kind::DoubleCategory => FinDblCat::from_json(v).map(|a| a.validate()),
        Kind::Functor => FinFunctor::from_json(v).map(|f| f.validate()),
        Kind::DoubleFunctor => DblFunctor::from_json(v).map(|f| f.validate()),
        Kind::SimplicialMap => SimplicialMap::from_json(v).map(|f| f.validate()),
        Kind::SievePushoutSpec => SievePushoutSpec::from_json(v).map(|_| vec![]),
        Kind::DblSievePushoutSpec => DblSievePushoutSpec::from_json(v).map(|_| vec![]),
        Kind::Diagram => Diagram::from_json(v).map(|_| vec![]),
        Kind::DblDiagram => DblDiagram::from_json(v).map(|_| vec![]),
    };
    match found {
        Ok(vs) | Err(Error::Axioms(vs)) => Ok((kind, vs)),
        Err(e) => Err(e),
    }
}

pub fn violations_to_json(vs: &[Violation]) -> Value {
    vs.iter().map(|v| json!({"location": v.location, "axiom": v.axiom.to_string(), "witness": v.witness})).collect()
}

fn bad(at: &str, msg: impl Display) -> Error {
    Error::Json(format!("{at}: {msg}"))
}

fn get<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(at, format!("missing key {key:?}")))
}

fn array<'a>(v: &'a Value, at: &str) -> Result<&'a [Value]> {
    v.as_array().map(Vec::as_slice).ok_or_else(|| bad(at, "expected an array"))
}

fn object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(at, "expected an object"))
}

fn string<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(at, "expected a string"))
}

fn natural(v: &Value, at: &str) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad(at, "expected a natural number"))
}

fn strings(v: &Value, at: &str) -> Result<Vec<String>> {
    array(v, at)?.iter().enumerate().map(|(i, s)| string(s, &format!("{at}[{i}]")).map(str::to_string)).collect()
}

/// A tuple of labels of fixed length.
fn tuple<'a>(v: &'a Value, len: usize, at: &str) -> Result<Vec<&'a str>> {
    let items = array(v, at)?;
    if items.len() != len {
        return Err(bad(at, format!("expected {len} entries, found {}", items.len())));
    }
    items.iter().enumerate().map(|(i, s)| string(s, &format!("{at}[{i}]"))).collect()
}

/// Written labels of one kind of cell, and the way back.
struct Names {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Names {
    fn new(labels: &[String]) -> Names {
        let mut count: HashMap<&str, usize> = HashMap::new();
        for l in labels {
            *count.entry(l).or_default() += 1;
        }
        let names: Vec<String> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| if count[l.as_str()] > 1 { format!("{l}#{i}") } else { l.clone() })
            .collect();
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Names { names, index }
    }

    fn read(labels: Vec<String>, at: &str) -> Result<Names> {
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(bad(at, format!("duplicate label {l:?}")));
            }
        }
        Ok(Names { names: labels, index })
    }

    fn find(&self, label: &str, what: &str, at: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| bad(at, format!("unknown {what} {label:?}")))
    }

    fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
}

fn object_names(c: &FinCat) -> Names {
    Names::new(c.object_labels())
}

fn morphism_names(c: &FinCat) -> Names {
    Names::new(c.morphism_labels())
}

/// `{source label: target label}` over all indices.
fn label_map(src: &Names, tgt: &Names, f: impl Fn(usize) -> usize) -> Value {
    let m: BTreeMap<&str, &str> = (0..src.names.len()).map(|i| (src.name(i), tgt.name(f(i)))).collect();
    json!(m)
}

/// Reads a total label map into indices.
fn read_label_map(v: &Value, src: &Names, tgt: &Names, what: &str, at: &str) -> Result<Vec<usize>> {
    let m = object(v, at)?;
    let mut out = vec![None; src.names.len()];
    for (k, t) in m {
        let i = src.find(k, what, at)?;
        out[i] = Some(tgt.find(string(t, &format!("{at}.{k}"))?, what, &format!("{at}.{k}"))?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| bad(at, format!("no image for {what} {:?}", src.name(i)))))
        .collect()
}

fn functor_maps(f: &FinFunctor) -> Value {
    let (s, t) = (f.source(), f.target());
    json!({
        "objects": label_map(&object_names(s), &object_names(t), |x| f.on_object(x)),
        "morphisms": label_map(&morphism_names(s), &morphism_names(t), |m| f.on_morphism(m)),
    })
}

/// Object and morphism maps between known categories; no law is checked.
fn read_functor_maps(v: &Value, s: &Arc<FinCat>, t: &Arc<FinCat>, at: &str) -> Result<FinFunctor> {
    let objects =
        read_label_map(get(v, "objects", at)?, &object_names(s), &object_names(t), "object", &format!("{at}.objects"))?;
    let morphisms = read_label_map(
        get(v, "morphisms", at)?,
        &morphism_names(s),
        &morphism_names(t),
        "morphism",
        &format!("{at}.morphisms"),
    )?;
    FinFunctor::unchecked(s.clone(), t.clone(), objects, morphisms)
}

impl Json for FinCat {
    fn to_json(&self) -> Value {
        let (ob, mo) = (object_names(self), morphism_names(self));
        let morphisms: Vec<Value> = (0..self.morphism_count())
            .map(|m| json!({"id": mo.name(m), "src": ob.name(self.src(m)), "tgt": ob.name(self.tgt(m))}))
            .collect();
        let identities: BTreeMap<&str, &str> =
            (0..self.object_count()).map(|x| (ob.name(x), mo.name(self.identity(x)))).collect();
        let compose: Vec<Value> = self
            .composable_pairs()
            .filter_map(|(g, f)| self.compose(g, f).map(|gf| json!([mo.name(g), mo.name(f), mo.name(gf)])))
            .collect();
        json!({"objects": ob.names, "morphisms": morphisms, "identities": identities, "compose": compose})
    }

    fn from_json(v: &Value) -> Result<FinCat> {
        let ob = Names::read(strings(get(v, "objects", "$")?, "$.objects")?, "$.objects")?;
        let mut specs = Vec::new();
        for (i, m) in array(get(v, "morphisms", "$")?, "$.morphisms")?.iter().enumerate() {
            let at = format!("$.morphisms[{i}]");
            let id = string(get(m, "id", &at)?, &format!("{at}.id"))?.to_string();
            let s = ob.find(string(get(m, "src", &at)?, &format!("{at}.src"))?, "object", &at)?;
            let t = ob.find(string(get(m, "tgt", &at)?, &format!("{at}.tgt"))?, "object", &at)?;
            specs.push((id, s, t));
        }
        let mo = Names::read(specs.iter().map(|s| s.0.clone()).collect(), "$.morphisms")?;
        let ids = object(get(v, "identities", "$")?, "$.identities")?;
        let identities = (0..ob.names.len())
            .map(|x| {
                let at = format!("$.identities.{}", ob.name(x));
                let m = ids
                    .get(ob.name(x))
                    .ok_or_else(|| bad("$.identities", format!("no identity for {:?}", ob.name(x))))?;
                mo.find(string(m, &at)?, "morphism", &at)
            })
            .collect::<Result<Vec<_>>>()?;
        let triples = array(get(v, "compose", "$")?, "$.compose")?
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let at = format!("$.compose[{i}]");
                let l = tuple(t, 3, &at)?;
                Ok((mo.find(l[0], "morphism", &at)?, mo.find(l[1], "morphism", &at)?, mo.find(l[2], "morphism", &at)?))
            })
            .collect::<Result<Vec<_>>>()?;
        FinCat::from_table(ob.names, specs, identities, &triples)
    }
}

impl Json for FinPoset {
    fn to_json(&self) -> Value {
        let leq: Vec<Value> = self
            .relation()
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| json!([self.label(a), self.label(b)]))
            .collect();
        json!({"elements": self.labels(), "leq": leq})
    }

    /// `leq` may list any generating pairs; reflexive-transitive closure is taken.
    fn from_json(v: &Value) -> Result<FinPoset> {
        let el = Names::read(strings(get(v, "elements", "$")?, "$.elements")?, "$.elements")?;
        let pairs = array(get(v, "leq", "$")?, "$.leq")?
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let at = format!("$.leq[{i}]");
                let l = tuple(p, 2, &at)?;
                Ok((el.find(l[0], "element", &at)?, el.find(l[1], "element", &at)?))
            })
            .collect::<Result<Vec<_>>>()?;
        FinPoset::from_generators(el.names, &pairs)
    }
}

impl Json for TruncSSet {
    fn to_json(&self) -> Value {
        let d = self.trunc();
        let names: Vec<Names> = (0..=d).map(|k| Names::new(self.labels(k))).collect();
        let table = |k: usize, below: &Names, arity: usize, at: &dyn Fn(usize, usize) -> usize| -> Value {
            let m: BTreeMap<&str, Vec<&str>> = (0..self.count(k))
                .map(|x| (names[k].name(x), (0..arity).map(|i| below.name(at(x, i))).collect()))
                .collect();
            json!(m)
        };
        let faces: BTreeMap<String, Value> =
            (1..=d).map(|k| (k.to_string(), table(k, &names[k - 1], k + 1, &|x, i| self.face(k, x, i)))).collect();
        let degens: BTreeMap<String, Value> =
            (0..d).map(|k| (k.to_string(), table(k, &names[k + 1], k + 1, &|x, j| self.degeneracy(k, x, j)))).collect();
        let levels: Vec<&Vec<String>> = names.iter().map(|n| &n.names).collect();
        json!({"trunc": d, "levels": levels, "faces": faces, "degens": degens})
    }

    fn from_json(v: &Value) -> Result<TruncSSet> {
        let d = natural(get(v, "trunc", "$")?, "$.trunc")?;
        let levels = array(get(v, "levels", "$")?, "$.levels")?;
        if levels.len() != d + 1 {
            return Err(bad("$.levels", format!("expected {} levels", d + 1)));
        }
        let names = levels
            .iter()
            .enumerate()
            .map(|(k, l)| Names::read(strings(l, &format!("$.levels[{k}]"))?, &format!("$.levels[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let read = |key: &str, k: usize, other: &Names| -> Result<Vec<Vec<usize>>> {
            let at = format!("$.{key}.{k}");
            let m = object(get(get(v, key, "$")?, &k.to_string(), &format!("$.{key}"))?, &at)?;
            (0..names[k].names.len())
                .map(|x| {
                    let row = m
                        .get(names[k].name(x))
                        .ok_or_else(|| bad(&at, format!("no row for {:?}", names[k].name(x))))?;
                    let at = format!("{at}.{}", names[k].name(x));
                    tuple(row, k + 1, &at)?.into_iter().map(|s| other.find(s, "simplex", &at)).collect()
                })
                .collect()
        };
        let faces = (0..=d)
            .map(|k| if k == 0 { Ok(vec![]) } else { read("faces", k, &names[k - 1]) })
            .collect::<Result<Vec<_>>>()?;
        let degens = (0..=d)
            .map(|k| if k == d { Ok(vec![]) } else { read("degens", k, &names[k + 1]) })
            .collect::<Result<Vec<_>>>()?;
        TruncSSet::from_tables(d, names.into_iter().map(|n| n.names).collect(), faces, degens)
    }
}

impl Json for FinDblCat {
    fn to_json(&self) -> Value {
        let a1 = self.a1();
        let (h, q) = (object_names(a1), morphism_names(a1));
        let pb = self.composable();
        let c_objects: Vec<Value> = (0..pb.cat().object_count())
            .map(|x| {
                let (l, r) = pb.object_pair(x);
                json!([h.name(l), h.name(r), h.name(self.c().on_object(x))])
            })
            .collect();
        let c_morphisms: Vec<Value> = (0..pb.cat().morphism_count())
            .map(|x| {
                let (l, r) = pb.morphism_pair(x);
                json!([q.name(l), q.name(r), q.name(self.c().on_morphism(x))])
            })
            .collect();
        json!({
            "A0": self.a0().to_json(),
            "A1": a1.to_json(),
            "s": functor_maps(self.s()),
            "t": functor_maps(self.t()),
            "i": functor_maps(self.i()),
            "c": {"objects": c_objects, "morphisms": c_morphisms},
        })
    }

    /// No axiom is checked, so a corrupted document still loads and can be
    /// handed to [`FinDblCat::validate`].
    fn from_json(v: &Value) -> Result<FinDblCat> {
        let a0 = Arc::new(FinCat::from_json(get(v, "A0", "$")?).map_err(|e| nested(e, "$.A0"))?);
        let a1 = Arc::new(FinCat::from_json(get(v, "A1", "$")?).map_err(|e| nested(e, "$.A1"))?);
        let s = read_functor_maps(get(v, "s", "$")?, &a1, &a0, "$.s")?;
        let t = read_functor_maps(get(v, "t", "$")?, &a1, &a0, "$.t")?;
        let i = read_functor_maps(get(v, "i", "$")?, &a0, &a1, "$.i")?;
        let (h, q) = (object_names(&a1), morphism_names(&a1));
        let c = get(v, "c", "$")?;
        let triples = |key: &str, names: &Names, what: &str| -> Result<HashMap<(usize, usize), usize>> {
            let at = format!("$.c.{key}");
            array(get(c, key, "$.c")?, &at)?
                .iter()
                .enumerate()
                .map(|(n, t)| {
                    let at = format!("{at}[{n}]");
                    let l = tuple(t, 3, &at)?;
                    Ok(((names.find(l[0], what, &at)?, names.find(l[1], what, &at)?), names.find(l[2], what, &at)?))
                })
                .collect()
        };
        let (co, cm) = (triples("objects", &h, "horizontal")?, triples("morphisms", &q, "square")?);
        FinDblCat::from_parts_unchecked(a0, a1.clone(), s, t, i, |pb| {
            let objects = (0..pb.cat().object_count())
                .map(|x| {
                    let p = pb.object_pair(x);
                    co.get(&p).copied().ok_or_else(|| {
                        bad("$.c.objects", format!("no composite of ({}, {})", h.name(p.0), h.name(p.1)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let morphisms = (0..pb.cat().morphism_count())
                .map(|x| {
                    let p = pb.morphism_pair(x);
                    cm.get(&p).copied().ok_or_else(|| {
                        bad("$.c.morphisms", format!("no composite of ({}, {})", q.name(p.0), q.name(p.1)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((objects, morphisms))
        })
    }
}

/// Prefixes the location of an error raised while reading a nested document.
fn nested(e: Error, at: &str) -> Error {
    match e {
        Error::Json(m) => Error::Json(m.replacen('$', at, 1)),
        other => Error::Json(format!("{at}: {other}")),
    }
}

fn read_nested<T: Json>(v: &Value, key: &str, at: &str) -> Result<T> {
    T::from_json(get(v, key, at)?).map_err(|e| nested(e, &format!("{at}.{key}")))
}

impl Json for FinFunctor {
    fn to_json(&self) -> Value {
        let mut v = functor_maps(self);
        v["source"] = self.source().to_json();
        v["target"] = self.target().to_json();
        v
    }

    fn from_json(v: &Value) -> Result<FinFunctor> {
        let s = Arc::new(read_nested::<FinCat>(v, "source", "$")?);
        let t = Arc::new(read_nested::<FinCat>(v, "target", "$")?);
        let f = read_functor_maps(v, &s, &t, "$")?;
        FinFunctor::new(s, t, f.object_map().to_vec(), f.morphism_map().to_vec())
    }
}

fn dbl_functor_maps(f: &DblFunctor) -> Value {
    let (s, t) = (f.source(), f.target());
    json!({
        "objects": label_map(&object_names(s.a0()), &object_names(t.a0()), |x| f.on_object(x)),
        "verticals": label_map(&morphism_names(s.a0()), &morphism_names(t.a0()), |x| f.on_vertical(x)),
        "horizontals": label_map(&object_names(s.a1()), &object_names(t.a1()), |x| f.on_horizontal(x)),
        "squares": label_map(&morphism_names(s.a1()), &morphism_names(t.a1()), |x| f.on_square(x)),
    })
}

fn read_dbl_functor_maps(v: &Value, s: &Arc<FinDblCat>, t: &Arc<FinDblCat>, at: &str) -> Result<DblFunctor> {
    let part = |key: &str, src: Names, tgt: Names, what: &str| {
        read_label_map(get(v, key, at)?, &src, &tgt, what, &format!("{at}.{key}"))
    };
    DblFunctor::from_maps(
        s.clone(),
        t.clone(),
        part("objects", object_names(s.a0()), object_names(t.a0()), "object")?,
        part("verticals", morphism_names(s.a0()), morphism_names(t.a0()), "vertical")?,
        part("horizontals", object_names(s.a1()), object_names(t.a1()), "horizontal")?,
        part("squares", morphism_names(s.a1()), morphism_names(t.a1()), "square")?,
    )
}

impl Json for DblFunctor {
    fn to_json(&self) -> Value {
        let mut v = dbl_functor_maps(self);
        v["source"] = self.source().to_json();
        v["target"] = self.target().to_json();
        v
    }

    fn from_json(v: &Value) -> Result<DblFunctor> {
        let s = Arc::new(read_nested::<FinDblCat>(v, "source", "$")?);
        let t = Arc::new(read_nested::<FinDblCat>(v, "target", "$")?);
        read_dbl_functor_maps(v, &s, &t, "$")
    }
}

impl Json for SimplicialMap {
    fn to_json(&self) -> Value {
        let (s, t) = (self.source(), self.target());
        let levels: Vec<Value> = (0..=s.trunc())
            .map(|k| label_map(&Names::new(s.labels(k)), &Names::new(t.labels(k)), |x| self.apply(k, x)))
            .collect();
        json!({"source": s.to_json(), "target": t.to_json(), "levels": levels})
    }

    fn from_json(v: &Value) -> Result<SimplicialMap> {
        let s = Arc::new(read_nested::<TruncSSet>(v, "source", "$")?);
        let t = Arc::new(read_nested::<TruncSSet>(v, "target", "$")?);
        let levels = array(get(v, "levels", "$")?, "$.levels")?;
        if levels.len() != s.trunc() + 1 {
            return Err(bad("$.levels", format!("expected {} levels", s.trunc() + 1)));
        }
        let levels = levels
            .iter()
            .enumerate()
            .map(|(k, l)| {
                let (a, b) = (Names::new(s.labels(k)), Names::new(t.labels(k)));
                read_label_map(l, &a, &b, "simplex", &format!("$.levels[{k}]"))
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(s, t, levels)
    }
}

/// `Q` and the labels of `P ⊆ Q`.
fn write_inclusion(inc: &PosetInclusion) -> (Value, Vec<&str>) {
    let q = inc.ambient();
    (q.to_json(), inc.embedding().iter().map(|&e| q.label(e)).collect())
}

fn read_inclusion(v: &Value) -> Result<PosetInclusion> {
    let q = Arc::new(read_nested::<FinPoset>(v, "Q", "$")?);
    let names = Names::read(q.labels().to_vec(), "$.Q")?;
    let keep = strings(get(v, "P", "$")?, "$.P")?
        .iter()
        .map(|p| names.find(p, "element", "$.P"))
        .collect::<Result<Vec<_>>>()?;
    PosetInclusion::induced(q, keep)
}

/// Fills a table indexed by `(cell, p)` or `(cell, p ≤ p2)` from rows of
/// labels, requiring every slot.
fn fill(slots: usize, rows: Vec<(usize, usize)>, at: &str) -> Result<Vec<usize>> {
    let mut out = vec![None; slots];
    for (slot, image) in rows {
        out[slot] = Some(image);
    }
    out.into_iter().enumerate().map(|(i, x)| x.ok_or_else(|| bad(at, format!("entry {i} is missing")))).collect()
}

/// Rows `[cell, p, image]` or `[cell, p, p2, image]` of a map out of a
/// product with `P`.
fn read_rows(
    v: &Value,
    key: &str,
    with_relation: bool,
    cells: &Names,
    sub: &FinPoset,
    target: &Names,
) -> Result<Vec<(usize, usize)>> {
    let at = format!("$.{key}");
    let pn = Names::new(sub.labels());
    let width = if with_relation { 4 } else { 3 };
    let (np, nr) = (sub.len(), sub.relation_count());
    array(get(v, key, "$")?, &at)?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let at = format!("{at}[{i}]");
            let l = tuple(r, width, &at)?;
            let c = cells.find(l[0], "cell", &at)?;
            let p = pn.find(l[1], "element", &at)?;
            let image = target.find(l[width - 1], "cell", &at)?;
            let slot = if with_relation {
                let p2 = pn.find(l[2], "element", &at)?;
                let m = sub.morphism_of(p, p2).ok_or_else(|| bad(&at, format!("{} is not below {}", l[1], l[2])))?;
                c * nr + m
            } else {
                c * np + p
            };
            Ok((slot, image))
        })
        .collect()
}

/// Rows for a map out of `X × P`: `[x, p, image]` or `[x, p, p2, image]`.
fn write_rows(
    cells: &Names,
    sub: &FinPoset,
    target: &Names,
    with_relation: bool,
    image: impl Fn(usize) -> usize,
) -> Vec<Value> {
    let (np, nr) = (sub.len(), sub.relation_count());
    let rel = sub.relation();
    (0..cells.names.len())
        .flat_map(|c| {
            if with_relation {
                rel.iter()
                    .enumerate()
                    .map(|(m, &(p, p2))| {
                        json!([cells.name(c), sub.label(p), sub.label(p2), target.name(image(c * nr + m))])
                    })
                    .collect::<Vec<_>>()
            } else {
                (0..np).map(|p| json!([cells.name(c), sub.label(p), target.name(image(c * np + p))])).collect()
            }
        })
        .collect()
}

impl Json for SievePushoutSpec {
    fn to_json(&self) -> Value {
        let (q, p) = write_inclusion(&self.inc);
        let sub = self.inc.sub();
        let set = Names::new(&self.set);
        let a = self.a();
        json!({
            "set": set.names,
            "Q": q,
            "P": p,
            "A": a.to_json(),
            "objects": write_rows(&set, sub, &object_names(a), false, |x| self.f.on_object(x)),
            "morphisms": write_rows(&set, sub, &morphism_names(a), true, |m| self.f.on_morphism(m)),
        })
    }

    fn from_json(v: &Value) -> Result<SievePushoutSpec> {
        let set = Names::read(strings(get(v, "set", "$")?, "$.set")?, "$.set")?;
        let inc = read_inclusion(v)?;
        let a = Arc::new(read_nested::<FinCat>(v, "A", "$")?);
        let sub = inc.sub().clone();
        let source = Arc::new(product(&discrete(set.names.clone()), &sub.as_category()?)?);
        let objects =
            fill(source.object_count(), read_rows(v, "objects", false, &set, &sub, &object_names(&a))?, "$.objects")?;
        let morphisms = fill(
            source.morphism_count(),
            read_rows(v, "morphisms", true, &set, &sub, &morphism_names(&a))?,
            "$.morphisms",
        )?;
        let f = FinFunctor::new(source, a, objects, morphisms)?;
        SievePushoutSpec::new(set.names, inc, f)
    }
}

impl Json for DblSievePushoutSpec {
    fn to_json(&self) -> Value {
        let (q, p) = write_inclusion(&self.inc);
        let sub = self.inc.sub();
        let (ob, mo) = (object_names(&self.c), morphism_names(&self.c));
        let a = self.a();
        json!({
            "C": self.c.to_json(),
            "Q": q,
            "P": p,
            "A": a.to_json(),
            "objects": write_rows(&ob, sub, &object_names(a.a0()), false, |x| self.f.on_object(x)),
            "verticals": write_rows(&ob, sub, &morphism_names(a.a0()), true, |x| self.f.on_vertical(x)),
            "horizontals": write_rows(&mo, sub, &object_names(a.a1()), false, |x| self.f.on_horizontal(x)),
            "squares": write_rows(&mo, sub, &morphism_names(a.a1()), true, |x| self.f.on_square(x)),
        })
    }

    fn from_json(v: &Value) -> Result<DblSievePushoutSpec> {
        let c = Arc::new(read_nested::<FinCat>(v, "C", "$")?);
        let inc = read_inclusion(v)?;
        let a = Arc::new(read_nested::<FinDblCat>(v, "A", "$")?);
        let sub = inc.sub().clone();
        let source = Arc::new(box_product(&c, &sub.as_category()?)?);
        let (ob, mo) = (object_names(&c), morphism_names(&c));
        let objects = fill(
            source.object_count(),
            read_rows(v, "objects", false, &ob, &sub, &object_names(a.a0()))?,
            "$.objects",
        )?;
        let verticals = fill(
            source.vertical_count(),
            read_rows(v, "verticals", true, &ob, &sub, &morphism_names(a.a0()))?,
            "$.verticals",
        )?;
        let horizontals = fill(
            source.horizontal_count(),
            read_rows(v, "horizontals", false, &mo, &sub, &object_names(a.a1()))?,
            "$.horizontals",
        )?;
        let squares = fill(
            source.square_count(),
            read_rows(v, "squares", true, &mo, &sub, &morphism_names(a.a1()))?,
            "$.squares",
        )?;
        let f = DblFunctor::from_maps(source, a, objects, verticals, horizontals, squares)?;
        DblSievePushoutSpec::new(c, inc, f)
    }
}

/// Values keyed by shape object, actions keyed by shape morphism; actions
/// of identities may be left out.
fn read_diagram_parts<V>(
    v: &Value,
    read_value: impl Fn(&Value, &str) -> Result<V>,
) -> Result<(Arc<FinCat>, Vec<V>, Vec<Value>)> {
    let shape = Arc::new(read_nested::<FinCat>(v, "shape", "$")?);
    let ob = object_names(&shape);
    let values = object(get(v, "values", "$")?, "$.values")?;
    let vals = (0..shape.object_count())
        .map(|j| {
            let at = format!("$.values.{}", ob.name(j));
            read_value(
                values.get(ob.name(j)).ok_or_else(|| bad("$.values", format!("no value at {:?}", ob.name(j))))?,
                &at,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let actions = object(get(v, "action", "$")?, "$.action")?;
    let mo = morphism_names(&shape);
    let acts = (0..shape.morphism_count()).map(|s| actions.get(mo.name(s)).cloned().unwrap_or(Value::Null)).collect();
    Ok((shape, vals, acts))
}

impl Json for Diagram {
    fn to_json(&self) -> Value {
        let shape = self.shape();
        let (ob, mo) = (object_names(shape), morphism_names(shape));
        let values: BTreeMap<&str, Value> =
            (0..shape.object_count()).map(|j| (ob.name(j), self.value(j).to_json())).collect();
        let action: BTreeMap<&str, Value> =
            (0..shape.morphism_count()).map(|s| (mo.name(s), functor_maps(self.action(s)))).collect();
        json!({"shape": shape.to_json(), "values": values, "action": action})
    }

    fn from_json(v: &Value) -> Result<Diagram> {
        let (shape, values, acts) =
            read_diagram_parts(v, |x, at| FinCat::from_json(x).map(Arc::new).map_err(|e| nested(e, at)))?;
        let mo = morphism_names(&shape);
        let action = (0..shape.morphism_count())
            .map(|s| {
                let (a, b) = (&values[shape.src(s)], &values[shape.tgt(s)]);
                if acts[s].is_null() {
                    if shape.is_identity(s) {
                        return Ok(FinFunctor::identity(a.clone()));
                    }
                    return Err(bad("$.action", format!("no action for {:?}", mo.name(s))));
                }
                let f = read_functor_maps(&acts[s], a, b, &format!("$.action.{}", mo.name(s)))?;
                FinFunctor::new(a.clone(), b.clone(), f.object_map().to_vec(), f.morphism_map().to_vec())
            })
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(shape, values, action)
    }
}

impl Json for DblDiagram {
    fn to_json(&self) -> Value {
        let shape = self.shape();
        let (ob, mo) = (object_names(shape), morphism_names(shape));
        let values: BTreeMap<&str, Value> =
            (0..shape.object_count()).map(|j| (ob.name(j), self.value(j).to_json())).collect();
        let action: BTreeMap<&str, Value> =
            (0..shape.morphism_count()).map(|s| (mo.name(s), dbl_functor_maps(self.action(s)))).collect();
        json!({"shape": shape.to_json(), "values": values, "action": action})
    }

    fn from_json(v: &Value) -> Result<DblDiagram> {
        let (shape, values, acts) =
            read_diagram_parts(v, |x, at| FinDblCat::from_json(x).map(Arc::new).map_err(|e| nested(e, at)))?;
        let mo = morphism_names(&shape);
        let action = (0..shape.morphism_count())
            .map(|s| {
                let (a, b) = (&values[shape.src(s)], &values[shape.tgt(s)]);
                if acts[s].is_null() {
                    if shape.is_identity(s) {
                        return Ok(DblFunctor::identity(a.clone()));
                    }
                    return Err(bad("$.action", format!("no action for {:?}", mo.name(s))));
                }
                read_dbl_functor_maps(&acts[s], a, b, &format!("$.action.{}", mo.name(s)))
            })
            .collect::<Result<Vec<_>>>()?;
        DblDiagram::new(shape, values, action)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Objects and non-identity morphisms.
pub fn cat_to_dot(c: &FinCat) -> String {
    let (ob, mo) = (object_names(c), morphism_names(c));
    let mut s = String::from("digraph {\n");
    for x in 0..c.object_count() {
        writeln!(s, "  {};", quote(ob.name(x))).unwrap();
    }
    for m in (0..c.morphism_count()).filter(|&m| !c.is_identity(m)) {
        writeln!(s, "  {} -> {} [label={}];", quote(ob.name(c.src(m))), quote(ob.name(c.tgt(m))), quote(mo.name(m)))
            .unwrap();
    }
    s.push_str("}\n");
    s
}

/// The Hasse diagram.
pub fn poset_to_dot(p: &FinPoset) -> String {
    let mut s = String::from("digraph {\n  rankdir=BT;\n");
    for a in 0..p.len() {
        writeln!(s, "  {};", quote(p.label(a))).unwrap();
    }
    for (a, b) in p.covers() {
        writeln!(s, "  {} -> {};", quote(p.label(a)), quote(p.label(b))).unwrap();
    }
    s.push_str("}\n");
    s
}

/// Horizontals solid, verticals dashed, and each non-identity square as a
/// note naming its boundary.
pub fn dbl_to_dot(a: &FinDblCat) -> String {
    let (ob, v) = (object_names(a.a0()), morphism_names(a.a0()));
    let (h, q) = (object_names(a.a1()), morphism_names(a.a1()));
    let mut s = String::from("digraph {\n");
    for x in 0..a.object_count() {
        writeln!(s, "  {};", quote(ob.name(x))).unwrap();
    }
    for f in (0..a.horizontal_count()).filter(|&f| !a.is_h_identity(f)) {
        writeln!(
            s,
            "  {} -> {} [label={}];",
            quote(ob.name(a.h_source(f))),
            quote(ob.name(a.h_target(f))),
            quote(h.name(f))
        )
        .unwrap();
    }
    let a0 = a.a0();
    for u in (0..a.vertical_count()).filter(|&u| !a0.is_identity(u)) {
        writeln!(
            s,
            "  {} -> {} [label={}, style=dashed];",
            quote(ob.name(a0.src(u))),
            quote(ob.name(a0.tgt(u))),
            quote(v.name(u))
        )
        .unwrap();
    }
    let a1 = a.a1();
    for sq in (0..a.square_count()).filter(|&sq| !a1.is_identity(sq) && !a.is_degenerate_square(sq)) {
        let (top, bottom, left, right) = a.boundary(sq);
        let note =
            format!("{}: {} ⇒ {} ({}, {})", q.name(sq), h.name(top), h.name(bottom), v.name(left), v.name(right));
        writeln!(s, "  {} [shape=note, label={}];", quote(&format!("square {}", q.name(sq))), quote(&note)).unwrap();
    }
    s.push_str("}\n");
    s
}

/// Vertices and nondegenerate edges.
pub fn sset_to_dot(x: &TruncSSet) -> String {
    let mut s = String::from("digraph {\n");
    let v = Names::new(x.labels(0));
    for p in 0..x.count(0) {
        writeln!(s, "  {};", quote(v.name(p))).unwrap();
    }
    if x.trunc() >= 1 {
        let e = Names::new(x.labels(1));
        for edge in x.nondegenerate(1) {
            let (a, b) = (x.face(1, edge, 1), x.face(1, edge, 0));
            writeln!(s, "  {} -> {} [label={}];", quote(v.name(a)), quote(v.name(b)), quote(e.name(edge))).unwrap();
        }
    }
    s.push_str("}\n");
    s
}
