//! Context files: JSON text holding a group, named subgroups and modules,
//! places with invariant data, decorated modules and sequences.
//!
//! ```json
//! {
//!   "version": 1,
//!   "group": {"table": [[0, 1], [1, 0]]},
//!   "ambient": "G",
//!   "subgroups": {"G": [0, 1], "1": [0]},
//!   "coefficient": "C",
//!   "modules": {"C": {"moduli": [2]}},
//!   "places": [{"name": "v", "decomposition": "G", "inertia": "1",
//!               "inv": [[{"1,1": [1]}, "1/2"]]}],
//!   "decorated": {"X": {"module": "C", "conditions": {"v": [{"1": [1]}]}}},
//!   "sequences": {}
//! }
//! ```
//!
//! Cochain literals map `"i,j,…"` (element indices) to value vectors; absent
//! tuples are zero. Rationals are strings `"a/b"`. A group may instead be
//! given as `{"permutations": [[…], …]}`, expanded to a table on load.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cochain::Cochain;
use crate::context::{DecoratedModule, DualityContext, Place};
use crate::error::{GroupError, LoadError};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::hom::ModuleHom;
use crate::module::GModule;
use crate::qz::QZ;
use crate::sequence::DecoratedSequence;

pub const FORMAT_VERSION: u64 = 1;
/// Largest group a file may describe.
pub const MAX_GROUP_ORDER: usize = 64;
pub const MAX_PERMUTATION_DEGREE: usize = 64;
/// Largest module a file may describe, as a number of elements.
pub const MAX_MODULE_ORDER: u128 = 1 << 12;

/// A sequence together with the names of its three terms.
#[derive(Clone, Debug)]
pub struct NamedSequence {
    pub terms: [String; 3],
    pub sequence: DecoratedSequence,
}

/// The parsed form of a context file. Names are kept so that emitting the
/// file again reproduces it.
#[derive(Clone, Debug)]
pub struct ContextFile {
    pub version: u64,
    pub context: DualityContext,
    pub subgroups: BTreeMap<String, Subgroup>,
    pub coefficient: String,
    pub modules: BTreeMap<String, Arc<GModule>>,
    /// Decorated modules with the name of the underlying module.
    pub decorated: BTreeMap<String, (String, DecoratedModule)>,
    pub sequences: BTreeMap<String, NamedSequence>,
}

impl PartialEq for ContextFile {
    fn eq(&self, o: &Self) -> bool {
        let places = |c: &DualityContext| -> Vec<_> {
            c.places.iter().map(|p| (p.name.clone(), p.decomposition.clone(), p.inertia.clone(), p.inv.values.clone())).collect()
        };
        let seqs = |f: &ContextFile| -> Vec<_> {
            f.sequences
                .iter()
                .map(|(k, s)| (k.clone(), s.terms.clone(), s.sequence.iota.rows(), s.sequence.pi.rows()))
                .collect()
        };
        self.version == o.version
            && self.context.group.table() == o.context.group.table()
            && self.context.ambient == o.context.ambient
            && self.context.coefficient == o.context.coefficient
            && places(&self.context) == places(&o.context)
            && self.subgroups == o.subgroups
            && self.coefficient == o.coefficient
            && self.modules == o.modules
            && self.decorated == o.decorated
            && seqs(self) == seqs(o)
    }
}

impl ContextFile {
    /// A file holding just `ctx`, with generated names for the subgroups it
    /// mentions.
    pub fn new(ctx: &DualityContext) -> ContextFile {
        let mut f = ContextFile {
            version: FORMAT_VERSION,
            context: ctx.clone(),
            subgroups: BTreeMap::new(),
            coefficient: "C".into(),
            modules: BTreeMap::new(),
            decorated: BTreeMap::new(),
            sequences: BTreeMap::new(),
        };
        f.add_subgroup("G", &ctx.ambient);
        f.add_subgroup("1", &ctx.group.trivial());
        for p in &ctx.places {
            f.add_subgroup(&format!("{}.D", p.name), &p.decomposition);
            f.add_subgroup(&format!("{}.I", p.name), &p.inertia);
        }
        f.modules.insert("C".into(), ctx.coefficient.clone());
        f
    }

    /// Registers a subgroup, returning the name of an equal one if present.
    pub fn add_subgroup(&mut self, name: &str, s: &Subgroup) -> String {
        if let Some((k, _)) = self.subgroups.iter().find(|(_, t)| *t == s) {
            return k.clone();
        }
        self.subgroups.insert(name.to_string(), s.clone());
        name.to_string()
    }

    pub fn add_module(&mut self, name: &str, m: &Arc<GModule>) -> String {
        if let Some((k, _)) = self.modules.iter().find(|(_, t)| *t == m) {
            return k.clone();
        }
        self.add_subgroup(&format!("{name}.G"), m.group());
        self.modules.insert(name.to_string(), m.clone());
        name.to_string()
    }

    pub fn add_decorated(&mut self, name: &str, x: &DecoratedModule) -> String {
        if let Some((k, _)) = self.decorated.iter().find(|(_, (_, t))| t == x) {
            return k.clone();
        }
        let m = self.add_module(name, &x.module);
        self.decorated.insert(name.to_string(), (m, x.clone()));
        name.to_string()
    }

    /// Adds a sequence; its terms are registered as `name.M1`, `name.M` and
    /// `name.M2` unless equal objects are already present.
    pub fn add_sequence(&mut self, name: &str, e: &DecoratedSequence) {
        let terms = [
            self.add_decorated(&format!("{name}.M1"), &e.m1),
            self.add_decorated(&format!("{name}.M"), &e.m),
            self.add_decorated(&format!("{name}.M2"), &e.m2),
        ];
        self.sequences.insert(name.to_string(), NamedSequence { terms, sequence: e.clone() });
    }

    pub fn sequence(&self, name: &str) -> Option<&DecoratedSequence> {
        self.sequences.get(name).map(|s| &s.sequence)
    }

    pub fn to_value(&self) -> Result<Value, LoadError> {
        emit(self)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> Result<String, LoadError> {
        let mut s = serde_json::to_string_pretty(&emit(self)?).map_err(|e| LoadError::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

pub fn load(path: &Path) -> Result<ContextFile, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    load_str(&text)
}

pub fn load_str(text: &str) -> Result<ContextFile, LoadError> {
    load_value(&parse_json(text)?)
}

fn parse_json(text: &str) -> Result<Value, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

/// A position in the document, for error paths.
#[derive(Clone, Copy)]
struct At<'a, 'p> {
    v: &'a Value,
    path: &'p str,
}

fn schema(path: &str, message: impl Into<String>) -> LoadError {
    LoadError::Schema { path: path.to_string(), message: message.into() }
}

fn invalid(path: &str, e: impl std::fmt::Display) -> LoadError {
    LoadError::Validation { path: path.to_string(), message: e.to_string() }
}

impl<'a> At<'a, '_> {
    fn object(self) -> Result<&'a Map<String, Value>, LoadError> {
        self.v.as_object().ok_or_else(|| schema(self.path, "expected an object"))
    }

    fn array(self) -> Result<&'a Vec<Value>, LoadError> {
        self.v.as_array().ok_or_else(|| schema(self.path, "expected an array"))
    }

    fn str(self) -> Result<&'a str, LoadError> {
        self.v.as_str().ok_or_else(|| schema(self.path, "expected a string"))
    }

    fn int(self) -> Result<i64, LoadError> {
        self.v.as_i64().ok_or_else(|| schema(self.path, "expected an integer"))
    }

    fn index(self) -> Result<usize, LoadError> {
        self.v.as_u64().map(|x| x as usize).ok_or_else(|| schema(self.path, "expected a non-negative integer"))
    }

    fn ints(self, path: &str) -> Result<Vec<i64>, LoadError> {
        self.array()?.iter().enumerate().map(|(i, x)| At { v: x, path: &format!("{path}[{i}]") }.int()).collect()
    }

    fn indices(self, path: &str) -> Result<Vec<usize>, LoadError> {
        self.array()?.iter().enumerate().map(|(i, x)| At { v: x, path: &format!("{path}[{i}]") }.index()).collect()
    }

    fn matrix(self, path: &str) -> Result<Vec<Vec<i64>>, LoadError> {
        self.array()?.iter().enumerate().map(|(i, r)| At { v: r, path: &format!("{path}[{i}]") }.ints(&format!("{path}[{i}]"))).collect()
    }
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, LoadError> {
    obj.get(key).ok_or_else(|| schema(path, format!("missing field \"{key}\"")))
}

/// A group given by `{"table": …}` or `{"permutations": …}`.
pub fn parse_group_str(text: &str) -> Result<Arc<FiniteGroup>, LoadError> {
    parse_group(At { v: &parse_json(text)?, path: "$" })
}

fn parse_group(at: At) -> Result<Arc<FiniteGroup>, LoadError> {
    let obj = at.object()?;
    let g = match (obj.get("table"), obj.get("permutations")) {
        (Some(t), None) => {
            let path = format!("{}.table", at.path);
            let rows = At { v: t, path: &path }.array()?;
            if rows.len() > MAX_GROUP_ORDER {
                return Err(schema(&path, format!("group order exceeds {MAX_GROUP_ORDER}")));
            }
            let table = rows
                .iter()
                .enumerate()
                .map(|(i, r)| At { v: r, path: &format!("{path}[{i}]") }.indices(&format!("{path}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_table(table).map_err(|e| invalid(&path, e))?
        }
        (None, Some(p)) => {
            let path = format!("{}.permutations", at.path);
            let gens = At { v: p, path: &path }
                .array()?
                .iter()
                .enumerate()
                .map(|(i, r)| At { v: r, path: &format!("{path}[{i}]") }.indices(&format!("{path}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            if gens.iter().any(|p| p.len() > MAX_PERMUTATION_DEGREE) {
                return Err(schema(&path, format!("permutations move at most {MAX_PERMUTATION_DEGREE} points")));
            }
            match FiniteGroup::from_permutations_capped(&gens, MAX_GROUP_ORDER) {
                Err(GroupError::TooLarge) => return Err(schema(&path, format!("group order exceeds {MAX_GROUP_ORDER}"))),
                r => r.map_err(|e| invalid(&path, e))?,
            }
        }
        _ => return Err(schema(at.path, "expected exactly one of \"table\" or \"permutations\"")),
    };
    match obj.get("labels") {
        None => Ok(g),
        Some(l) => {
            let path = format!("{}.labels", at.path);
            let labels = At { v: l, path: &path }
                .array()?
                .iter()
                .enumerate()
                .map(|(i, x)| At { v: x, path: &format!("{path}[{i}]") }.str().map(str::to_string))
                .collect::<Result<Vec<_>, _>>()?;
            if labels.len() != g.order() {
                return Err(schema(&path, "one label per element is required"));
            }
            Ok(g.with_labels(labels))
        }
    }
}

/// A cochain literal of the given degree on `module`.
pub fn parse_cochain_str(module: &Arc<GModule>, degree: usize, text: &str) -> Result<Cochain, LoadError> {
    parse_cochain(At { v: &parse_json(text)?, path: "$" }, module, degree)
}

fn parse_cochain(at: At, module: &Arc<GModule>, degree: usize) -> Result<Cochain, LoadError> {
    let obj = at.object()?;
    let g = module.group();
    if (g.order() as u128).pow(degree as u32) > 1 << 20 {
        return Err(schema(at.path, "cochain table too large"));
    }
    let mut c = Cochain::zero(module, degree).map_err(|e| invalid(at.path, e))?;
    let mut values: Vec<Vec<i64>> = (0..c.tuples()).map(|i| c.value_at(i).to_vec()).collect();
    for (key, val) in obj {
        let path = format!("{}[\"{key}\"]", at.path);
        let args: Vec<Elem> = if key.is_empty() {
            Vec::new()
        } else {
            key.split(',').map(|s| s.trim().parse::<Elem>().map_err(|_| schema(&path, "tuple keys are comma-separated element indices"))).collect::<Result<_, _>>()?
        };
        if args.len() != degree {
            return Err(schema(&path, format!("expected {degree} indices")));
        }
        if let Some(&bad) = args.iter().find(|&&a| !g.contains(a)) {
            return Err(schema(&path, format!("element {bad} is not in the acting group")));
        }
        let v = At { v: val, path: &path }.ints(&path)?;
        if v.len() != module.rank() {
            return Err(schema(&path, format!("expected a vector of length {}", module.rank())));
        }
        values[c.index(&args)] = v;
    }
    c = Cochain::from_values(module, degree, &values).map_err(|e| invalid(at.path, e))?;
    Ok(c)
}

/// The sparse literal form of a cochain.
pub fn cochain_literal(c: &Cochain) -> Value {
    let mut m = Map::new();
    for i in 0..c.tuples() {
        let v = c.value_at(i);
        if v.iter().any(|&x| x != 0) {
            let key = c.tuple(i).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
            m.insert(key, json!(v));
        }
    }
    Value::Object(m)
}

fn lookup<'m, T>(map: &'m BTreeMap<String, T>, at: At<'_, '_>, what: &str) -> Result<(&'m str, &'m T), LoadError> {
    let name = at.str()?;
    map.get_key_value(name).map(|(k, v)| (k.as_str(), v)).ok_or_else(|| schema(at.path, format!("unknown {what} \"{name}\"")))
}

fn parse_module(at: At, subgroups: &BTreeMap<String, Subgroup>, ambient: &Subgroup) -> Result<Arc<GModule>, LoadError> {
    let obj = at.object()?;
    let group = match obj.get("subgroup") {
        Some(s) => lookup(subgroups, At { v: s, path: &format!("{}.subgroup", at.path) }, "subgroup")?.1.clone(),
        None => ambient.clone(),
    };
    let mpath = format!("{}.moduli", at.path);
    let moduli = At { v: field(obj, at.path, "moduli")?, path: &mpath }.ints(&mpath)?;
    if moduli.iter().any(|&d| !(1..=1 << 16).contains(&d)) {
        return Err(schema(&mpath, "moduli must lie in 1..=65536"));
    }
    if moduli.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128).filter(|&x| x <= MAX_MODULE_ORDER)).is_none() {
        return Err(schema(&mpath, format!("module order exceeds {MAX_MODULE_ORDER}")));
    }
    let Some(action) = obj.get("action") else {
        return Ok(GModule::trivial_action(&group, moduli));
    };
    let apath = format!("{}.action", at.path);
    let mut given = Vec::new();
    for (k, v) in (At { v: action, path: &apath }).object()? {
        let path = format!("{apath}[\"{k}\"]");
        let sigma: Elem = k.parse().map_err(|_| schema(&path, "keys are element indices"))?;
        given.push((sigma, At { v, path: &path }.matrix(&path)?));
    }
    GModule::build(&group, moduli, &given).map_err(|e| invalid(at.path, e))
}

const TOP_LEVEL_KEYS: [&str; 9] = ["version", "group", "ambient", "subgroups", "coefficient", "modules", "places", "decorated", "sequences"];

pub fn load_value(doc: &Value) -> Result<ContextFile, LoadError> {
    let root = At { v: doc, path: "$" }.object()?;
    if let Some(k) = root.keys().find(|k| !TOP_LEVEL_KEYS.contains(&k.as_str())) {
        return Err(schema("$", format!("unknown field \"{k}\"")));
    }
    let version = match root.get("version") {
        Some(v) => At { v, path: "$.version" }.index()? as u64,
        None => FORMAT_VERSION,
    };
    if version != FORMAT_VERSION {
        return Err(schema("$.version", format!("unsupported version {version}")));
    }
    let group = parse_group(At { v: field(root, "$", "group")?, path: "$.group" })?;

    let mut subgroups = BTreeMap::new();
    if let Some(s) = root.get("subgroups") {
        for (name, elems) in (At { v: s, path: "$.subgroups" }).object()? {
            let path = format!("$.subgroups[\"{name}\"]");
            let elems = At { v: elems, path: &path }.indices(&path)?;
            if let Some(&bad) = elems.iter().find(|&&e| e >= group.order()) {
                return Err(schema(&path, format!("element {bad} is out of range")));
            }
            subgroups.insert(name.clone(), group.subgroup_from_elements(&elems).map_err(|e| invalid(&path, e))?);
        }
    }
    let ambient = match root.get("ambient") {
        Some(a) => lookup(&subgroups, At { v: a, path: "$.ambient" }, "subgroup")?.1.clone(),
        None => group.whole(),
    };

    let mut modules = BTreeMap::new();
    if let Some(ms) = root.get("modules") {
        for (name, m) in (At { v: ms, path: "$.modules" }).object()? {
            let path = format!("$.modules[\"{name}\"]");
            modules.insert(name.clone(), parse_module(At { v: m, path: &path }, &subgroups, &ambient)?);
        }
    }
    let (coefficient, c) = lookup(&modules, At { v: field(root, "$", "coefficient")?, path: "$.coefficient" }, "module")?;
    let (coefficient, c) = (coefficient.to_string(), c.clone());

    let mut places = Vec::new();
    if let Some(ps) = root.get("places") {
        for (i, p) in (At { v: ps, path: "$.places" }).array()?.iter().enumerate() {
            let path = format!("$.places[{i}]");
            let obj = At { v: p, path: &path }.object()?;
            let name = At { v: field(obj, &path, "name")?, path: &format!("{path}.name") }.str()?;
            if places.iter().any(|q: &Place| q.name == name) {
                return Err(schema(&format!("{path}.name"), format!("duplicate place \"{name}\"")));
            }
            let dec = lookup(&subgroups, At { v: field(obj, &path, "decomposition")?, path: &format!("{path}.decomposition") }, "subgroup")?.1;
            let ine = lookup(&subgroups, At { v: field(obj, &path, "inertia")?, path: &format!("{path}.inertia") }, "subgroup")?.1;
            if !dec.is_subgroup_of(&ambient) {
                return Err(invalid(&format!("{path}.decomposition"), "decomposition group is not contained in the ambient group"));
            }
            let cv = c.restrict(dec).map_err(|e| invalid(&path, e))?;
            let ipath = format!("{path}.inv");
            let mut pairs = Vec::new();
            for (j, pair) in (At { v: field(obj, &path, "inv")?, path: &ipath }).array()?.iter().enumerate() {
                let ppath = format!("{ipath}[{j}]");
                let pair = At { v: pair, path: &ppath }.array()?;
                if pair.len() != 2 {
                    return Err(schema(&ppath, "expected [cocycle, \"a/b\"]"));
                }
                let cocycle = parse_cochain(At { v: &pair[0], path: &format!("{ppath}[0]") }, &cv, 2)?;
                let rpath = format!("{ppath}[1]");
                let q: QZ = At { v: &pair[1], path: &rpath }.str()?.parse().map_err(|_| schema(&rpath, "expected a rational \"a/b\""))?;
                pairs.push((cocycle, q));
            }
            places.push(Place::new(name, dec.clone(), ine.clone(), &c, pairs).map_err(|e| invalid(&path, e))?);
        }
    }
    let ctx = DualityContext::new(ambient, c, places).map_err(|e| invalid("$", e))?;

    let mut decorated = BTreeMap::new();
    if let Some(ds) = root.get("decorated") {
        for (name, d) in (At { v: ds, path: "$.decorated" }).object()? {
            let path = format!("$.decorated[\"{name}\"]");
            let obj = At { v: d, path: &path }.object()?;
            let (mname, m) = lookup(&modules, At { v: field(obj, &path, "module")?, path: &format!("{path}.module") }, "module")?;
            if m.group() != &ctx.ambient {
                return Err(invalid(&format!("{path}.module"), "decorated modules must live on the ambient group"));
            }
            let cpath = format!("{path}.conditions");
            let conds = At { v: field(obj, &path, "conditions")?, path: &cpath }.object()?;
            if let Some(k) = conds.keys().find(|k| ctx.place_index(k).is_none()) {
                return Err(schema(&cpath, format!("unknown place \"{k}\"")));
            }
            let mut gens = Vec::new();
            for p in &ctx.places {
                let ppath = format!("{cpath}[\"{}\"]", p.name);
                let list = At { v: field(conds, &cpath, &p.name)?, path: &ppath }.array()?;
                let mv = m.restrict(&p.decomposition).map_err(|e| invalid(&ppath, e))?;
                let cs = list
                    .iter()
                    .enumerate()
                    .map(|(j, x)| parse_cochain(At { v: x, path: &format!("{ppath}[{j}]") }, &mv, 1))
                    .collect::<Result<Vec<_>, _>>()?;
                gens.push(cs);
            }
            let x = DecoratedModule::from_cocycles(&ctx, m.clone(), &gens).map_err(|e| invalid(&path, e))?;
            decorated.insert(name.clone(), (mname.to_string(), x));
        }
    }

    let mut sequences = BTreeMap::new();
    if let Some(ss) = root.get("sequences") {
        for (name, s) in (At { v: ss, path: "$.sequences" }).object()? {
            let path = format!("$.sequences[\"{name}\"]");
            let obj = At { v: s, path: &path }.object()?;
            let mut terms = Vec::new();
            for key in ["m1", "m", "m2"] {
                let (k, (_, x)) = lookup(&decorated, At { v: field(obj, &path, key)?, path: &format!("{path}.{key}") }, "decorated module")?;
                terms.push((k.to_string(), x.clone()));
            }
            let hom = |key: &str, s: &Arc<GModule>, t: &Arc<GModule>| -> Result<ModuleHom, LoadError> {
                let hpath = format!("{path}.{key}");
                let rows = At { v: field(obj, &path, key)?, path: &hpath }.matrix(&hpath)?;
                ModuleHom::new(s, t, &rows).map_err(|e| invalid(&hpath, e))
            };
            let iota = hom("iota", &terms[0].1.module, &terms[1].1.module)?;
            let pi = hom("pi", &terms[1].1.module, &terms[2].1.module)?;
            let mut it = terms.into_iter();
            let (n1, m1) = it.next().unwrap();
            let (n, m) = it.next().unwrap();
            let (n2, m2) = it.next().unwrap();
            let sequence = DecoratedSequence::new(&ctx, m1, m, m2, iota, pi).map_err(|e| invalid(&path, e))?;
            sequences.insert(name.clone(), NamedSequence { terms: [n1, n, n2], sequence });
        }
    }

    Ok(ContextFile { version, context: ctx, subgroups, coefficient, modules, decorated, sequences })
}

fn subgroup_name(f: &ContextFile, s: &Subgroup) -> Result<String, LoadError> {
    f.subgroups
        .iter()
        .find(|(_, t)| *t == s)
        .map(|(k, _)| k.clone())
        .ok_or_else(|| LoadError::Schema { path: "$.subgroups".into(), message: format!("no name registered for subgroup {:?}", s.elements()) })
}

fn emit_module(f: &ContextFile, m: &GModule) -> Result<Value, LoadError> {
    let mut obj = Map::new();
    obj.insert("moduli".into(), json!(m.moduli()));
    if m.group() != &f.context.ambient {
        obj.insert("subgroup".into(), json!(subgroup_name(f, m.group())?));
    }
    if !m.is_trivial_action() {
        let k = m.rank();
        let mut action = Map::new();
        for sigma in m.group().generators() {
            let flat = m.matrix(sigma).map_err(|e| invalid("$.modules", e))?;
            let rows: Vec<Vec<i64>> = flat.chunks(k.max(1)).map(<[i64]>::to_vec).collect();
            action.insert(sigma.to_string(), json!(rows));
        }
        obj.insert("action".into(), Value::Object(action));
    }
    Ok(Value::Object(obj))
}

fn emit(f: &ContextFile) -> Result<Value, LoadError> {
    let ctx = &f.context;
    let mut root = Map::new();
    root.insert("version".into(), json!(f.version));
    let mut group = Map::new();
    group.insert("table".into(), json!(ctx.group.table()));
    if let Some(l) = ctx.group.labels() {
        group.insert("labels".into(), json!(l));
    }
    root.insert("group".into(), Value::Object(group));
    root.insert("ambient".into(), json!(subgroup_name(f, &ctx.ambient)?));
    root.insert("subgroups".into(), Value::Object(f.subgroups.iter().map(|(k, s)| (k.clone(), json!(s.elements()))).collect()));
    root.insert("coefficient".into(), json!(f.coefficient));
    let mut modules = Map::new();
    for (k, m) in &f.modules {
        modules.insert(k.clone(), emit_module(f, m)?);
    }
    root.insert("modules".into(), Value::Object(modules));
    let mut places = Vec::new();
    for p in &ctx.places {
        let inv: Vec<Value> = p.inv_pairs.iter().map(|(c, q)| json!([cochain_literal(c), q.to_string()])).collect();
        places.push(json!({
            "name": p.name,
            "decomposition": subgroup_name(f, &p.decomposition)?,
            "inertia": subgroup_name(f, &p.inertia)?,
            "inv": inv,
        }));
    }
    root.insert("places".into(), Value::Array(places));
    let mut decorated = Map::new();
    for (k, (m, x)) in &f.decorated {
        let mut conds = Map::new();
        for (v, p) in ctx.places.iter().enumerate() {
            let h1 = ctx.local_h1(&x.module, v).map_err(|e| invalid("$.decorated", e))?;
            let gens = x.conditions[v].generators();
            let cs = gens
                .iter()
                .map(|g| h1.representative(g).map(|c| cochain_literal(&c)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| invalid("$.decorated", e))?;
            conds.insert(p.name.clone(), Value::Array(cs));
        }
        decorated.insert(k.clone(), json!({"module": m, "conditions": Value::Object(conds)}));
    }
    root.insert("decorated".into(), Value::Object(decorated));
    let mut sequences = Map::new();
    for (k, s) in &f.sequences {
        sequences.insert(
            k.clone(),
            json!({
                "m1": s.terms[0],
                "m": s.terms[1],
                "m2": s.terms[2],
                "iota": s.sequence.iota.rows(),
                "pi": s.sequence.pi.rows(),
            }),
        );
    }
    root.insert("sequences".into(), Value::Object(sequences));
    Ok(Value::Object(root))
}

/// The shipped example contexts as files, keyed by file name. Sequence
/// `ctx/name` of the catalogue lands in the file for `ctx` under `name`;
/// the two sides of a field-change family go to `<family>-K.json` and
/// `<family>-F.json`.
pub fn shipped_files() -> Vec<(String, ContextFile)> {
    let mut files: Vec<(String, ContextFile)> = Vec::new();
    let mut put = |file: String, ctx: &DualityContext, name: &str, e: Option<&DecoratedSequence>| {
        let pos = match files.iter().position(|(f, _)| *f == file) {
            Some(p) => p,
            None => {
                files.push((file, ContextFile::new(ctx)));
                files.len() - 1
            }
        };
        if let Some(e) = e {
            files[pos].1.add_sequence(name, e);
        }
    };
    for s in crate::fixtures::shipped_sequences() {
        let (ctx_name, seq) = s.name.split_once('/').expect("catalogue names are ctx/name");
        match seq {
            "K" => put(format!("{ctx_name}-K.json"), &s.ctx, "E", Some(&s.sequence)),
            "Ind" => put(format!("{ctx_name}-F.json"), &s.ctx, "IndE", Some(&s.sequence)),
            _ => put(format!("{ctx_name}.json"), &s.ctx, seq, Some(&s.sequence)),
        }
    }
    let broken = crate::fixtures::broken_context();
    let e = crate::fixtures::twisted_split_sequence(&broken, &[vec![1, 1]]).ok();
    put("broken.json".into(), &broken, "twisted", e.as_ref());
    files.sort_by(|a, b| a.0.cmp(&b.0));
    files
}
