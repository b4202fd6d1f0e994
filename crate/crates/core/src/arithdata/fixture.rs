//! The "skvfix/1" extension fixture: group, places with local data, roots of unity, class groups, θ sources.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::Cyc;
use crate::center::group_ring::resolve_element;
use crate::center::GroupRingElement;
use crate::error::{Error, Result};
use crate::groups::{bit, members, size, CharacterTable, FiniteGroup, GroupSpec, Subset};
use crate::lvalues::is_prime;
use crate::rednorm::{FiniteGModule, Realization};

pub const FIXTURE_SCHEMA: &str = "skvfix/1";
pub const SOURCE_SCHEMA: &str = "skvtheta/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct FixtureJson {
    pub schema: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_conjugation: Option<String>,
    pub places: Vec<PlaceJson>,
    /// Places that may be used to build T in the 𝔄_S search.
    #[serde(default)]
    pub t_pool: Vec<String>,
    pub mu_l: MuJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic: Option<ArtinJson>,
    #[serde(default)]
    pub twisted_roots_of_unity: Vec<TwistJson>,
    #[serde(default)]
    pub class_groups: Vec<ClassGroupJson>,
    #[serde(default)]
    pub sources: Vec<SourceJson>,
    #[serde(default)]
    pub inertia_quotients: Vec<InertiaQuotientJson>,
    #[serde(default)]
    pub h_candidates: Vec<serde_json::Value>,
    /// Primes p for which the fixture declares L^cl ⊂ (L^cl)^+(ζ_p).
    #[serde(default)]
    pub zeta_p_condition: Vec<u64>,
    #[serde(default)]
    pub sets: Vec<SetsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct PlaceJson {
    pub label: String,
    #[serde(default)]
    pub infinite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_char: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue_norm: Option<u64>,
    #[serde(default)]
    pub decomposition: Vec<String>,
    #[serde(default)]
    pub inertia: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<String>,
    #[serde(default)]
    pub ramified: bool,
    #[serde(default)]
    pub wild: bool,
    #[serde(default)]
    pub complex_at_l: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct MuJson {
    pub order: u64,
    /// g ↦ k with g(ζ) = ζ^k, on generators; empty means trivial action.
    #[serde(default)]
    pub action: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ArtinJson {
    pub conductor: u64,
    /// residue a ↦ σ_a on generators of (ℤ/f)^×.
    pub artin: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct TwistJson {
    /// n = 1 − r.
    pub twist: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(default)]
    pub action: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ClassGroupJson {
    #[serde(default)]
    pub set_t: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub module: serde_json::Value,
    pub provenance: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SourceJson {
    pub schema: String,
    /// Generators of the certificate subgroup V; the source describes L^{[V,V]}/L^V.
    pub subgroup: Vec<String>,
    pub kind: SourceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<u64>,
    #[serde(default)]
    pub artin: BTreeMap<String, String>,
    #[serde(default)]
    pub values: Vec<SourceValueJson>,
    pub provenance: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SourceKind {
    Cyclotomic,
    Table,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SourceValueJson {
    pub r: i64,
    /// ψ(v) = ζ_order^k on generators of V.
    pub character: BTreeMap<String, i64>,
    pub order: u64,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "T", default)]
    pub t: Vec<String>,
    pub value: serde_json::Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct InertiaQuotientJson {
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub subgroup: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetsJson {
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "T", default)]
    pub t: Vec<String>,
    pub r: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

/// Local data at one chosen place 𝔓 of L above a place 𝔭 of the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub label: String,
    pub infinite: bool,
    /// Residue characteristic, 0 at infinity.
    pub q: u64,
    pub norm: u64,
    pub decomposition: Subset,
    pub inertia: Subset,
    pub frobenius: usize,
    pub ramified: bool,
    pub wild: bool,
    pub complex: bool,
}

impl Place {
    /// Generator j_w of the decomposition group at a complex place.
    pub fn conjugation(&self) -> Option<usize> {
        (self.infinite && self.complex).then(|| members(self.decomposition)[1])
    }
}

/// A surjection (ℤ/f)^× → V/[V,V], stored on every residue as a representative in V.
#[derive(Clone, Debug)]
pub struct ArtinMap {
    pub conductor: u64,
    pub image: Vec<Option<usize>>,
    pub subgroup: Subset,
    pub commutator: Subset,
}

impl ArtinMap {
    pub fn parse(
        g: &FiniteGroup,
        v: Subset,
        f: u64,
        gens: &BTreeMap<String, String>,
    ) -> Result<Self> {
        if f == 0 {
            return Err(Error::invalid("conductor must be positive"));
        }
        let comm = g.commutator_subgroup(v);
        let in_coset = |x: usize, y: usize| comm & bit(g.mul(x, g.inv(y))) != 0;
        let mut image: Vec<Option<usize>> = vec![None; f as usize];
        let one = (1 % f) as usize;
        image[one] = Some(0);
        let mut pairs = Vec::new();
        for (a, x) in gens {
            let a: u64 = a
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue {a:?} in Artin map")))?;
            if a.gcd(&f) != 1 {
                return Err(Error::invalid(format!("{a} is not a unit modulo {f}")));
            }
            let x = resolve_element(g, x)?;
            if v & bit(x) == 0 {
                return Err(Error::invalid(format!(
                    "Artin image {} lies outside the subgroup",
                    g.label(x)
                )));
            }
            pairs.push(((a % f) as usize, x));
        }
        let mut queue = VecDeque::from([one]);
        while let Some(a) = queue.pop_front() {
            let xa = image[a].unwrap();
            for &(b, xb) in &pairs {
                let c = (a * b) % f as usize;
                let xc = g.mul(xa, xb);
                match image[c] {
                    Some(y) if !in_coset(y, xc) => {
                        return Err(Error::invalid(format!(
                            "Artin map is not a homomorphism at {c} mod {f}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        image[c] = Some(xc);
                        queue.push_back(c);
                    }
                }
            }
        }
        for a in 0..f {
            if a.gcd(&f) == 1 && image[a as usize].is_none() {
                return Err(Error::invalid(format!(
                    "Artin map undetermined at {a} mod {f}"
                )));
            }
        }
        let mut covered = comm;
        for x in image.iter().flatten() {
            covered |= bit(*x);
        }
        if g.generated_by_set(covered) != v {
            return Err(Error::invalid(
                "Artin map is not surjective onto the abelianized subgroup",
            ));
        }
        Ok(ArtinMap {
            conductor: f,
            image,
            subgroup: v,
            commutator: comm,
        })
    }

    pub fn at(&self, a: i64) -> Option<usize> {
        self.image[a.rem_euclid(self.conductor as i64) as usize]
    }

    /// Residues mapping into [V,V].
    pub fn kernel(&self) -> Vec<u64> {
        (0..self.conductor)
            .filter(|&a| self.image[a as usize].is_some_and(|x| self.commutator & bit(x) != 0))
            .collect()
    }
}

/// μ-type module ℤ/w with g acting as multiplication by `kappa[g]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAction {
    pub w: u64,
    pub kappa: Vec<u64>,
}

impl CyclicAction {
    pub fn parse(g: &FiniteGroup, w: u64, gens: &BTreeMap<String, i64>) -> Result<Self> {
        if w == 0 {
            return Err(Error::invalid("root of unity order must be positive"));
        }
        let pairs: Vec<(usize, u64)> = gens
            .iter()
            .map(|(x, k)| Ok((resolve_element(g, x)?, k.rem_euclid(w as i64) as u64)))
            .collect::<Result<_>>()?;
        let n = g.order();
        let mut kappa: Vec<Option<u64>> = vec![None; n];
        kappa[0] = Some(1 % w);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let kx = kappa[x].unwrap();
            for &(y, ky) in &pairs {
                let z = g.mul(x, y);
                let kz = kx * ky % w;
                match kappa[z] {
                    Some(k) if k != kz => {
                        return Err(Error::invalid(format!(
                            "root of unity action inconsistent at {}",
                            g.label(z)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        kappa[z] = Some(kz);
                        queue.push_back(z);
                    }
                }
            }
        }
        let kappa: Vec<u64> = if pairs.is_empty() {
            vec![1 % w; n]
        } else {
            kappa
                .into_iter()
                .enumerate()
                .map(|(x, k)| {
                    k.ok_or_else(|| {
                        Error::invalid(format!("action undetermined at {}", g.label(x)))
                    })
                })
                .collect::<Result<_>>()?
        };
        let out = CyclicAction { w, kappa };
        out.check(g)?;
        Ok(out)
    }

    fn check(&self, g: &FiniteGroup) -> Result<()> {
        for a in 0..g.order() {
            if self.kappa[a].gcd(&self.w) != 1 % self.w.max(2) && self.w > 1 {
                return Err(Error::invalid(format!(
                    "action of {} is not by a unit",
                    g.label(a)
                )));
            }
            for b in 0..g.order() {
                if self.kappa[g.mul(a, b)] != self.kappa[a] * self.kappa[b] % self.w {
                    return Err(Error::invalid("root of unity action is not a homomorphism"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct TwistData {
    pub n: u32,
    pub action: CyclicAction,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub t: Vec<usize>,
    pub prime: Option<u64>,
    pub module: FiniteGModule,
    pub provenance: String,
}

/// One L-value L_{S'}^{T'}(r, ψ) of the abelian extension L^{[V,V]}/L^V.
#[derive(Clone, Debug)]
pub struct SourceValue {
    pub r: i64,
    /// Exponents of ψ on V modulo `order`.
    pub psi: Vec<Option<u32>>,
    pub order: u64,
    pub s: Vec<String>,
    pub t: Vec<String>,
    pub value: Cyc,
}

#[derive(Clone, Debug)]
pub enum SourceData {
    Cyclotomic(ArtinMap),
    Table(Vec<SourceValue>),
}

#[derive(Clone, Debug)]
pub struct Source {
    pub subgroup: Subset,
    pub data: SourceData,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceSets {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub r: i64,
    pub p: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub provenance: String,
    pub group: Arc<FiniteGroup>,
    pub table: Arc<CharacterTable>,
    pub real: Realization,
    pub j: Option<usize>,
    pub places: Vec<Place>,
    pub t_pool: Vec<usize>,
    pub mu: CyclicAction,
    pub cyclotomic: Option<ArtinMap>,
    pub twists: Vec<TwistData>,
    pub class_groups: Vec<ClassGroup>,
    pub sources: Vec<Source>,
    pub inertia_quotients: Vec<(Vec<usize>, Subset)>,
    pub h_candidates: Vec<GroupRingElement>,
    pub zeta_p_condition: Vec<u64>,
    pub sets: Vec<PlaceSets>,
    pub raw: FixtureJson,
}

fn subgroup_of(g: &FiniteGroup, gens: &[String]) -> Result<Subset> {
    let idx = gens
        .iter()
        .map(|x| resolve_element(g, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.generated(&idx))
}

impl Fixture {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: FixtureJson = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::Parse(format!(
                "fixture at {}: {}",
                if path == "." { "(root)".into() } else { path },
                e.inner()
            ))
        })?;
        Self::from_raw(raw)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::fixture(path.display().to_string(), e.to_string()))?;
        Self::from_json_str(&text)
            .map_err(|e| Error::fixture(path.display().to_string(), e.to_string()))
    }

    pub fn from_raw(raw: FixtureJson) -> Result<Self> {
        if raw.schema != FIXTURE_SCHEMA {
            return Err(Error::Parse(format!(
                "schema: expected {FIXTURE_SCHEMA:?}, found {:?}",
                raw.schema
            )));
        }
        let group = Arc::new(raw.group.build()?);
        let g = &*group;
        let table = Arc::new(CharacterTable::monomial(group.clone())?);
        let real = Realization::new(&table);
        let j = match &raw.complex_conjugation {
            Some(x) => {
                let j = resolve_element(g, x)?;
                if g.mul(j, j) != 0 || g.center() & bit(j) == 0 {
                    return Err(Error::invalid(
                        "complexConjugation: j must be a central involution",
                    ));
                }
                Some(j)
            }
            None => None,
        };
        let mut places = Vec::with_capacity(raw.places.len());
        for (i, p) in raw.places.iter().enumerate() {
            let place = parse_place(g, p)
                .map_err(|e| Error::Parse(format!("places[{i}] ({}): {e}", p.label)))?;
            if places.iter().any(|q: &Place| q.label == place.label) {
                return Err(Error::Parse(format!(
                    "places[{i}]: duplicate label {:?}",
                    place.label
                )));
            }
            places.push(place);
        }
        if !places.iter().any(|p| p.infinite) {
            return Err(Error::Parse(
                "places: at least one infinite place is required".into(),
            ));
        }
        let find = |label: &str| -> Result<usize> {
            places
                .iter()
                .position(|p| p.label == label)
                .ok_or_else(|| Error::Parse(format!("unknown place label {label:?}")))
        };
        let labels = |v: &[String]| -> Result<Vec<usize>> { v.iter().map(|x| find(x)).collect() };
        let t_pool = labels(&raw.t_pool).map_err(|e| Error::Parse(format!("tPool: {e}")))?;
        if let Some(&i) = t_pool.iter().find(|&&i| places[i].infinite) {
            return Err(Error::Parse(format!(
                "tPool: {} is infinite",
                places[i].label
            )));
        }
        let mu = CyclicAction::parse(g, raw.mu_l.order, &raw.mu_l.action)
            .map_err(|e| Error::Parse(format!("muL: {e}")))?;
        if let Some(j) = j {
            if raw.mu_l.order > 2 && mu.kappa[j] != raw.mu_l.order - 1 {
                return Err(Error::Parse(
                    "muL: complex conjugation must act by inversion".into(),
                ));
            }
        }
        let cyclotomic = match &raw.cyclotomic {
            Some(c) => {
                if !g.is_abelian() {
                    return Err(Error::Parse(
                        "cyclotomic: only abelian extensions of Q embed in cyclotomic fields"
                            .into(),
                    ));
                }
                let map = ArtinMap::parse(g, g.full(), c.conductor, &c.artin)
                    .map_err(|e| Error::Parse(format!("cyclotomic: {e}")))?;
                Some(map)
            }
            None => None,
        };
        let mut twists = Vec::new();
        for (i, t) in raw.twisted_roots_of_unity.iter().enumerate() {
            let ctx = |e: Error| Error::Parse(format!("twistedRootsOfUnity[{i}]: {e}"));
            if t.twist < 2 {
                return Err(ctx(Error::invalid("twist must be at least 2 (r <= -1)")));
            }
            let (action, provenance) = match (t.order, &cyclotomic) {
                (Some(w), _) => (
                    CyclicAction::parse(g, w, &t.action).map_err(ctx)?,
                    t.provenance
                        .clone()
                        .unwrap_or_else(|| "declared by fixture".into()),
                ),
                (None, Some(art)) => {
                    let a = super::annihilator::twisted_roots_from_artin(g, art, t.twist)
                        .map_err(ctx)?;
                    (a, "computed from the Artin map".into())
                }
                (None, None) => {
                    return Err(ctx(Error::invalid(
                        "order is required without cyclotomic data",
                    )))
                }
            };
            twists.push(TwistData {
                n: t.twist,
                action,
                provenance,
            });
        }
        let mut class_groups = Vec::new();
        for (i, c) in raw.class_groups.iter().enumerate() {
            let ctx = |e: Error| Error::Parse(format!("classGroups[{i}]: {e}"));
            let t = labels(&c.set_t).map_err(ctx)?;
            if let Some(p) = c.prime {
                if !is_prime(p) {
                    return Err(ctx(Error::invalid(format!("{p} is not prime"))));
                }
            }
            let module = FiniteGModule::from_json(&group, &c.module).map_err(ctx)?;
            class_groups.push(ClassGroup {
                t,
                prime: c.prime,
                module,
                provenance: c.provenance.clone(),
            });
        }
        let mut sources = Vec::new();
        for (i, s) in raw.sources.iter().enumerate() {
            let src = parse_source(g, s, cyclotomic.as_ref())
                .map_err(|e| Error::Parse(format!("sources[{i}]: {e}")))?;
            sources.push(src);
        }
        let mut inertia_quotients = Vec::new();
        for (i, h) in raw.inertia_quotients.iter().enumerate() {
            let ctx = |e: Error| Error::Parse(format!("inertiaQuotients[{i}]: {e}"));
            let jset = labels(&h.j).map_err(ctx)?;
            let sub = subgroup_of(g, &h.subgroup).map_err(ctx)?;
            inertia_quotients.push((jset, sub));
        }
        let h_candidates = raw
            .h_candidates
            .iter()
            .enumerate()
            .map(|(i, v)| {
                GroupRingElement::from_json(&group, v)
                    .map_err(|e| Error::Parse(format!("hCandidates[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        for &p in &raw.zeta_p_condition {
            if !is_prime(p) {
                return Err(Error::Parse(format!("zetaPCondition: {p} is not prime")));
            }
        }
        let mut sets = Vec::new();
        for (i, s) in raw.sets.iter().enumerate() {
            let ctx = |e: Error| Error::Parse(format!("sets[{i}]: {e}"));
            if s.r > 0 {
                return Err(ctx(Error::invalid("r must be non-positive")));
            }
            sets.push(PlaceSets {
                s: labels(&s.s).map_err(ctx)?,
                t: labels(&s.t).map_err(ctx)?,
                r: s.r,
                p: s.p,
            });
        }
        let fix = Fixture {
            name: raw.name.clone(),
            description: raw.description.clone().unwrap_or_default(),
            provenance: raw.provenance.clone().unwrap_or_default(),
            group,
            table,
            real,
            j,
            places,
            t_pool,
            mu,
            cyclotomic,
            twists,
            class_groups,
            sources,
            inertia_quotients,
            h_candidates,
            zeta_p_condition: raw.zeta_p_condition.clone(),
            sets,
            raw,
        };
        fix.check_artin_consistency()?;
        for (i, (jset, sub)) in fix.inertia_quotients.iter().enumerate() {
            let expected = fix.inertia_closure(jset);
            if expected != *sub {
                return Err(Error::Parse(format!(
                    "inertiaQuotients[{i}]: declared subgroup differs from the normal closure of the inertia groups"
                )));
            }
        }
        Ok(fix)
    }

    pub fn place(&self, label: &str) -> Result<usize> {
        self.places
            .iter()
            .position(|p| p.label == label)
            .ok_or_else(|| Error::invalid(format!("unknown place label {label:?}")))
    }

    pub fn place_labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.places[i].label.clone()).collect()
    }

    pub fn infinite_places(&self) -> Vec<usize> {
        (0..self.places.len())
            .filter(|&i| self.places[i].infinite)
            .collect()
    }

    pub fn ramified_places(&self) -> Vec<usize> {
        (0..self.places.len())
            .filter(|&i| !self.places[i].infinite && self.places[i].ramified)
            .collect()
    }

    /// Resolve a comma-separated list of labels; "inf" and "infinity" name all infinite places.
    pub fn parse_place_list(&self, text: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let idx = match self.place(part) {
                Ok(i) => vec![i],
                Err(e) if part == "inf" || part == "infinity" => {
                    let inf = self.infinite_places();
                    if inf.is_empty() {
                        return Err(e);
                    }
                    inf
                }
                Err(e) => return Err(e),
            };
            for i in idx {
                if !out.contains(&i) {
                    out.push(i);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// H_J: the normal subgroup generated by the inertia groups at J.
    pub fn inertia_closure(&self, jset: &[usize]) -> Subset {
        let g = &*self.group;
        let mut s = bit(0);
        for &i in jset {
            s |= self.places[i].inertia;
        }
        g.normal_closure(s)
    }

    /// Complex conjugations j_w at the complex places over every infinite place (all conjugates).
    pub fn complex_conjugations(&self) -> Vec<usize> {
        let g = &*self.group;
        let mut out = Vec::new();
        for p in &self.places {
            if let Some(j) = p.conjugation() {
                for x in 0..g.order() {
                    let c = g.conj(x, j);
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Local data must agree with the Artin map where both are present.
    fn check_artin_consistency(&self) -> Result<()> {
        let Some(art) = &self.cyclotomic else {
            return Ok(());
        };
        let g = &*self.group;
        let roots = super::annihilator::twisted_roots_from_artin(g, art, 1)?;
        if roots != self.mu {
            return Err(Error::Parse(format!(
                "muL: declared order {} disagrees with the Artin map (w = {})",
                self.mu.w, roots.w
            )));
        }
        let f = art.conductor;
        for p in self.places.iter().filter(|p| !p.infinite) {
            let q = p.q;
            let mut qk = 1;
            while f % (qk * q) == 0 {
                qk *= q;
            }
            let rest = f / qk;
            let (inertia, frob) = if qk == 1 {
                (bit(0), art.at(q as i64).expect("q is a unit"))
            } else {
                let mut inertia = bit(0);
                for a in 0..f {
                    if a.gcd(&f) == 1 && a % rest == 1 % rest {
                        inertia |= bit(art.at(a as i64).unwrap());
                    }
                }
                let a0 = (0..f)
                    .find(|&a| a % rest == q % rest && a % qk == 1 % qk)
                    .expect("CRT");
                (g.generated_by_set(inertia), art.at(a0 as i64).unwrap())
            };
            if inertia != p.inertia {
                return Err(Error::Parse(format!(
                    "place {}: inertia group disagrees with the Artin map",
                    p.label
                )));
            }
            if inertia & bit(g.mul(frob, g.inv(p.frobenius))) == 0 {
                return Err(Error::Parse(format!(
                    "place {}: Frobenius disagrees with the Artin map",
                    p.label
                )));
            }
        }
        Ok(())
    }
}

fn parse_place(g: &FiniteGroup, p: &PlaceJson) -> Result<Place> {
    let decomposition = subgroup_of(g, &p.decomposition)?;
    let inertia = subgroup_of(g, &p.inertia)?;
    let frobenius = match &p.frobenius {
        Some(x) => resolve_element(g, x)?,
        None => 0,
    };
    if inertia & !decomposition != 0 {
        return Err(Error::invalid(
            "inertia is not contained in the decomposition group",
        ));
    }
    if members(decomposition)
        .iter()
        .any(|&d| g.conjugate_subset(d, inertia) != inertia)
    {
        return Err(Error::invalid(
            "inertia is not normal in the decomposition group",
        ));
    }
    if decomposition & bit(frobenius) == 0 {
        return Err(Error::invalid(
            "Frobenius lies outside the decomposition group",
        ));
    }
    // |D/I| = order of φ modulo I, and D = ⟨I, φ⟩
    let mut k = 1;
    let mut x = frobenius;
    while inertia & bit(x) == 0 {
        x = g.mul(x, frobenius);
        k += 1;
    }
    if size(decomposition) != k * size(inertia) {
        return Err(Error::invalid(format!(
            "|D|/|I| = {} but Frobenius has order {k} modulo inertia",
            size(decomposition) / size(inertia)
        )));
    }
    if p.infinite {
        if p.residue_char.is_some() || p.residue_norm.is_some() {
            return Err(Error::invalid("infinite places carry no residue data"));
        }
        if decomposition != inertia || size(decomposition) > 2 {
            return Err(Error::invalid(
                "an infinite place has D = I of order at most 2",
            ));
        }
        if p.complex_at_l != (size(decomposition) == 2) {
            return Err(Error::invalid(
                "complexAtL must hold exactly when D has order 2",
            ));
        }
        if p.wild || p.ramified {
            return Err(Error::invalid("ramified/wild flags are for finite places"));
        }
        return Ok(Place {
            label: p.label.clone(),
            infinite: true,
            q: 0,
            norm: 1,
            decomposition,
            inertia,
            frobenius: 0,
            ramified: false,
            wild: false,
            complex: p.complex_at_l,
        });
    }
    if p.complex_at_l {
        return Err(Error::invalid("complexAtL is for infinite places"));
    }
    let q = p
        .residue_char
        .ok_or_else(|| Error::invalid("residueChar is required"))?;
    if !is_prime(q) {
        return Err(Error::invalid(format!("residueChar {q} is not prime")));
    }
    let norm = p.residue_norm.unwrap_or(q);
    let mut m = norm;
    while m.is_multiple_of(q) {
        m /= q;
    }
    if m != 1 {
        return Err(Error::invalid(format!(
            "residueNorm {norm} is not a power of {q}"
        )));
    }
    let ramified = size(inertia) > 1;
    if ramified != p.ramified {
        return Err(Error::invalid(format!(
            "ramified flag {} but |I| = {}",
            p.ramified,
            size(inertia)
        )));
    }
    let wild = (size(inertia) as u64).is_multiple_of(q);
    if wild != p.wild {
        return Err(Error::invalid(format!(
            "wild flag {} but q = {q}, |I| = {}",
            p.wild,
            size(inertia)
        )));
    }
    Ok(Place {
        label: p.label.clone(),
        infinite: false,
        q,
        norm,
        decomposition,
        inertia,
        frobenius,
        ramified,
        wild,
        complex: false,
    })
}

fn parse_source(g: &FiniteGroup, s: &SourceJson, cyclotomic: Option<&ArtinMap>) -> Result<Source> {
    if s.schema != SOURCE_SCHEMA {
        return Err(Error::Parse(format!(
            "schema: expected {SOURCE_SCHEMA:?}, found {:?}",
            s.schema
        )));
    }
    let v = subgroup_of(g, &s.subgroup)?;
    let data = match s.kind {
        SourceKind::Cyclotomic => {
            if !s.values.is_empty() {
                return Err(Error::invalid("cyclotomic sources carry no value table"));
            }
            if v != g.full() {
                return Err(Error::invalid(
                    "cyclotomic sources need base Q, i.e. the subgroup must be G",
                ));
            }
            let map = match (s.conductor, cyclotomic) {
                (Some(f), _) => ArtinMap::parse(g, v, f, &s.artin)?,
                (None, Some(c)) if s.artin.is_empty() => c.clone(),
                _ => return Err(Error::invalid("conductor and artin are required")),
            };
            SourceData::Cyclotomic(map)
        }
        SourceKind::Table => {
            if s.conductor.is_some() || !s.artin.is_empty() {
                return Err(Error::invalid("table sources carry no Artin map"));
            }
            let mut values = Vec::new();
            for (i, e) in s.values.iter().enumerate() {
                let ctx = |err: Error| Error::Parse(format!("values[{i}]: {err}"));
                if e.r > 0 {
                    return Err(ctx(Error::invalid("r must be non-positive")));
                }
                let psi = linear_from_generators(g, v, e.order, &e.character).map_err(ctx)?;
                let value = Cyc::from_json(&e.value).map_err(ctx)?;
                values.push(SourceValue {
                    r: e.r,
                    psi,
                    order: e.order,
                    s: e.s.clone(),
                    t: e.t.clone(),
                    value,
                });
            }
            SourceData::Table(values)
        }
    };
    Ok(Source {
        subgroup: v,
        data,
        provenance: s.provenance.clone(),
    })
}

/// Extend generator values ζ_order^k to a linear character of V (checked multiplicative).
pub fn linear_from_generators(
    g: &FiniteGroup,
    v: Subset,
    order: u64,
    gens: &BTreeMap<String, i64>,
) -> Result<Vec<Option<u32>>> {
    if order == 0 {
        return Err(Error::invalid("character order must be positive"));
    }
    let pairs: Vec<(usize, u32)> = gens
        .iter()
        .map(|(x, k)| {
            let x = resolve_element(g, x)?;
            if v & bit(x) == 0 {
                return Err(Error::invalid(format!(
                    "{} is outside the subgroup",
                    g.label(x)
                )));
            }
            Ok((x, k.rem_euclid(order as i64) as u32))
        })
        .collect::<Result<_>>()?;
    let mut exps: Vec<Option<u32>> = vec![None; g.order()];
    exps[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let kx = exps[x].unwrap() as u64;
        for &(y, ky) in &pairs {
            let z = g.mul(x, y);
            let kz = ((kx + ky as u64) % order) as u32;
            match exps[z] {
                Some(k) if k != kz => {
                    return Err(Error::invalid(format!(
                        "character values inconsistent at {}",
                        g.label(z)
                    )))
                }
                Some(_) => {}
                None => {
                    exps[z] = Some(kz);
                    queue.push_back(z);
                }
            }
        }
    }
    for x in members(v) {
        if exps[x].is_none() {
            return Err(Error::invalid(format!(
                "character undetermined at {}",
                g.label(x)
            )));
        }
    }
    for x in members(v) {
        for y in members(v) {
            let (a, b, c) = (
                exps[x].unwrap(),
                exps[y].unwrap(),
                exps[g.mul(x, y)].unwrap(),
            );
            if (a as u64 + b as u64) % order != c as u64 {
                return Err(Error::invalid("character is not multiplicative"));
            }
        }
    }
    Ok(exps)
}
