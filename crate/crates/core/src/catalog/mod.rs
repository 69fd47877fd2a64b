//! The ADE rings, their MCM modules and the claimed trace ideals, loaded from
//! the data files in `catalog/`. The file grammar is described in
//! [`format`].

pub mod format;
pub mod template;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ideal::{Ideal, RingContext};
use crate::matfac::ZFormFactorization;
use crate::parse::{parse_ideal_generators, parse_matrix, parse_polynomial};
use crate::poly::{Field, PolyRing};
use crate::trace::{intersect_all, McmModule, ModulePresentation};

pub use format::{FamilySpec, ModuleBody};
use template::{eval, eval_cond, expand, Env};

const SOURCES: &[(&str, &str)] = &[
    ("veronese2.cat", include_str!("../../catalog/veronese2.cat")),
    ("ainf-dim1.cat", include_str!("../../catalog/ainf-dim1.cat")),
    ("dinf-dim1.cat", include_str!("../../catalog/dinf-dim1.cat")),
    ("an-dim1-odd.cat", include_str!("../../catalog/an-dim1-odd.cat")),
    ("a1-dim2.cat", include_str!("../../catalog/a1-dim2.cat")),
    ("x9-dim2.cat", include_str!("../../catalog/x9-dim2.cat")),
    ("an-dim2.cat", include_str!("../../catalog/an-dim2.cat")),
    ("dn-dim2.cat", include_str!("../../catalog/dn-dim2.cat")),
    ("e6.cat", include_str!("../../catalog/e6.cat")),
    ("e7.cat", include_str!("../../catalog/e7.cat")),
    ("e8.cat", include_str!("../../catalog/e8.cat")),
];

/// All built-in families, in a fixed order.
pub fn families() -> &'static [FamilySpec] {
    static FAMILIES: OnceLock<Vec<FamilySpec>> = OnceLock::new();
    FAMILIES.get_or_init(|| {
        SOURCES
            .iter()
            .map(|(file, text)| format::parse_family(text).unwrap_or_else(|e| panic!("catalog/{file}: {e}")))
            .collect()
    })
}

/// Looks a family up by name, ignoring case.
pub fn family(name: &str) -> Result<&'static FamilySpec> {
    families()
        .iter()
        .find(|f| f.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| {
            let known: Vec<&str> = families().iter().map(|f| f.name.as_str()).collect();
            Error::Catalog(format!("unknown family `{name}`; known: {}", known.join(", ")))
        })
}

/// The second Veronese subring `k[u,v,w]/(v^2 - uw)`.
pub fn veronese2_entry() -> &'static FamilySpec {
    family("Veronese2").expect("built-in family")
}

/// Parameter assignment, e.g. `n = 5`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Params(pub BTreeMap<String, i64>);

impl Params {
    pub fn none() -> Params {
        Params::default()
    }

    pub fn single(name: &str, value: i64) -> Params {
        Params(BTreeMap::from([(name.to_string(), value)]))
    }

    /// Parses `n=5,N=3`.
    pub fn parse(src: &str) -> Result<Params> {
        let mut map = BTreeMap::new();
        for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Argument(format!("expected name=value, got `{item}`")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| Error::Argument(format!("bad parameter value `{}`", v.trim())))?;
            map.insert(k.trim().to_string(), v);
        }
        Ok(Params(map))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let items: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", items.join(","))
    }
}

/// One module of an instantiated family.
#[derive(Clone, Debug)]
pub struct CatalogModule {
    pub name: String,
    pub module: McmModule,
    /// The claimed trace ideal, if the family states one for this module.
    pub expected_tau: Option<Ideal>,
    /// The claimed ideal as written in the catalog, after substitution.
    pub expected_tau_text: Option<String>,
}

impl CatalogModule {
    pub fn zform(&self) -> Option<&ZFormFactorization> {
        match &self.module {
            McmModule::ZForm(zf) => Some(zf),
            McmModule::Presentation(_) => None,
        }
    }
}

/// A claimed intersection of the trace ideals of several modules.
#[derive(Clone, Debug)]
pub struct Claim {
    pub modules: Vec<String>,
    pub expected: Ideal,
    pub expected_text: String,
}

/// A family at one parameter value, over one field.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: String,
    pub params: Params,
    pub ctx: Arc<RingContext>,
    /// Every module listed for these parameters, including any that turn
    /// out to be free.
    pub modules: Vec<CatalogModule>,
    pub expected_mcm: Option<Ideal>,
    pub expected_mcm_text: Option<String>,
    pub claims: Vec<Claim>,
}

/// A module with its computed trace ideal.
#[derive(Clone, Debug)]
pub struct TracedModule<'a> {
    pub module: &'a CatalogModule,
    pub trace: Ideal,
}

impl FamilyInstance {
    pub fn module(&self, name: &str) -> Result<&CatalogModule> {
        self.modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Catalog(format!("{} has no module `{name}`", self.family)))
    }

    /// Trace ideals of all listed modules (entries of `z id + phi` for
    /// z-form modules, the oracle otherwise).
    pub fn traces(&self) -> Result<Vec<TracedModule<'_>>> {
        self.modules
            .iter()
            .map(|m| {
                Ok(TracedModule {
                    module: m,
                    trace: m.module.trace_ideal(&self.ctx)?,
                })
            })
            .collect()
    }

    /// The non-free modules: those whose trace ideal is not the unit ideal.
    pub fn non_free(&self) -> Result<Vec<TracedModule<'_>>> {
        Ok(self.traces()?.into_iter().filter(|t| !t.trace.is_unit()).collect())
    }

    /// Intersection of the trace ideals of the non-free modules.
    pub fn mcm_test_ideal(&self) -> Result<Ideal> {
        let traced = self.non_free()?;
        if traced.is_empty() {
            log::warn!(
                "{} ({}) lists no non-free modules; returning the unit ideal",
                self.family,
                self.params
            );
        }
        intersect_all(traced.into_iter().map(|t| Ok(t.trace)), &self.ctx)
    }
}

impl FamilySpec {
    /// Parameter assignments of the acceptance grid (one empty assignment
    /// for families without parameters).
    pub fn grid(&self) -> Vec<Params> {
        let mut out = vec![Params::none()];
        for (name, values) in &self.grid {
            out = out
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut p = p.clone();
                        p.0.insert(name.clone(), *v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Fills in parameters the caller left out when the grid has a single
    /// value for them, and checks the domain constraints.
    pub fn resolve_params(&self, params: &Params) -> Result<Params> {
        let mut p = params.clone();
        for name in p.0.keys() {
            if !self.params.contains(name) {
                return Err(Error::Domain(format!("{} has no parameter `{name}`", self.name)));
            }
        }
        for name in &self.params {
            if p.0.contains_key(name) {
                continue;
            }
            match self.grid.iter().find(|(n, _)| n == name) {
                Some((_, values)) if values.len() == 1 => {
                    p.0.insert(name.clone(), values[0]);
                }
                _ => {
                    return Err(Error::Domain(format!(
                        "{} needs a value for parameter `{name}`",
                        self.name
                    )))
                }
            }
        }
        for cond in &self.domain {
            if !eval_cond(cond, &p.0)? {
                return Err(Error::Domain(format!(
                    "{}: constraint `{cond}` fails for {p}",
                    self.name
                )));
            }
        }
        Ok(p)
    }

    /// Checks that `field` can host this family.
    pub fn check_field(&self, field: &Field) -> Result<()> {
        if self.requires_i && !field.has_imaginary_unit() {
            return Err(Error::Field(format!(
                "{} uses a square root of -1, which {field} does not contain; use QQi or Fp:p with p = 1 mod 4",
                self.name
            )));
        }
        let ch = field.characteristic();
        if self.excluded_characteristics.contains(&ch) {
            return Err(Error::Field(format!(
                "{} is not valid in characteristic {ch}",
                self.name
            )));
        }
        Ok(())
    }

    /// Builds the ring, the modules and the claimed ideals at `params`, over
    /// `field` (the family's default field when `None`).
    pub fn instantiate(&self, params: &Params, field: Option<&Field>) -> Result<FamilyInstance> {
        self.instantiate_bounded(params, field, None)
    }

    /// Like [`FamilySpec::instantiate`], with Groebner computations in the
    /// ring aborting past `max_degree`.
    pub fn instantiate_bounded(
        &self,
        params: &Params,
        field: Option<&Field>,
        max_degree: Option<u32>,
    ) -> Result<FamilyInstance> {
        let params = self.resolve_params(params)?;
        let field = field.cloned().unwrap_or_else(|| self.field.clone());
        self.check_field(&field)?;
        let env = &params.0;
        let ring = PolyRing::new(self.variables.iter().cloned(), field);
        let here = |what: &str, e: Error| Error::Catalog(format!("{}: {what}: {e}", self.name));
        let equation = parse_polynomial(&expand(&self.equation, env)?, &ring).map_err(|e| here("equation", e))?;
        let ctx = RingContext::with_max_degree(&ring, vec![equation], max_degree)?;
        let zform = match (&self.z, &self.g) {
            (Some(z), Some(g)) => {
                let g = parse_polynomial(&expand(g, env)?, &ring).map_err(|e| here("g", e))?;
                Some((z.as_str(), g))
            }
            _ => None,
        };
        let ideal = |src: &str| -> Result<(Ideal, String)> {
            let text = expand(src, env)?;
            let gens = parse_ideal_generators(&text, &ring).map_err(|e| here(&text, e))?;
            Ok((Ideal::new(&ctx, gens)?, text))
        };

        let mut modules = Vec::new();
        for t in &self.modules {
            let mut envs: Vec<Env> = Vec::new();
            match &t.range {
                Some((var, lo, hi)) => {
                    for v in eval(lo, env)?..=eval(hi, env)? {
                        let mut e = env.clone();
                        e.insert(var.clone(), v);
                        envs.push(e);
                    }
                }
                None => envs.push(env.clone()),
            }
            for e in envs {
                if let Some(cond) = &t.condition {
                    if !eval_cond(cond, &e)? {
                        continue;
                    }
                }
                let name = expand(&t.name, &e)?;
                let module = match &t.body {
                    ModuleBody::Phi(src) => {
                        let (z, g) = zform.as_ref().expect("checked at parse time");
                        let phi = parse_matrix(&expand(src, &e)?, &ring).map_err(|err| here(&name, err))?;
                        let zf = ZFormFactorization::with_z_named(phi, g.clone(), z).map_err(|err| here(&name, err))?;
                        McmModule::ZForm(zf)
                    }
                    ModuleBody::Presentation(src) => {
                        let a = parse_matrix(&expand(src, &e)?, &ring).map_err(|err| here(&name, err))?;
                        McmModule::Presentation(ModulePresentation::new(&ctx, &a)?)
                    }
                };
                let (expected_tau, expected_tau_text) = match &t.tau {
                    Some(src) => {
                        let text = expand(src, &e)?;
                        let gens = parse_ideal_generators(&text, &ring).map_err(|err| here(&text, err))?;
                        (Some(Ideal::new(&ctx, gens)?), Some(text))
                    }
                    None => (None, None),
                };
                modules.push(CatalogModule {
                    name,
                    module,
                    expected_tau,
                    expected_tau_text,
                });
            }
        }

        let (expected_mcm, expected_mcm_text) = match &self.mcm {
            Some(src) => {
                let (i, text) = ideal(src)?;
                (Some(i), Some(text))
            }
            None => (None, None),
        };
        let mut claims = Vec::new();
        for c in &self.claims {
            if let Some(cond) = &c.condition {
                if !eval_cond(cond, env)? {
                    continue;
                }
            }
            let names = c.modules.iter().map(|m| expand(m, env)).collect::<Result<Vec<_>>>()?;
            let (expected, expected_text) = ideal(&c.ideal)?;
            claims.push(Claim {
                modules: names,
                expected,
                expected_text,
            });
        }
        Ok(FamilyInstance {
            family: self.name.clone(),
            params,
            ctx,
            modules,
            expected_mcm,
            expected_mcm_text,
            claims,
        })
    }
}

/// The non-free modules of a family at `params`; modules whose trace ideal
/// is the unit ideal are free and left out.
pub fn enumerate_family(family_name: &str, params: &Params) -> Result<Vec<CatalogModule>> {
    let inst = family(family_name)?.instantiate(params, None)?;
    let keep: Vec<String> = inst.non_free()?.iter().map(|t| t.module.name.clone()).collect();
    Ok(inst.modules.into_iter().filter(|m| keep.contains(&m.name)).collect())
}

/// The claimed trace ideal of one module, `None` if the family states none.
pub fn expected_tau(family_name: &str, params: &Params, module: &str) -> Result<Option<Ideal>> {
    let inst = family(family_name)?.instantiate(params, None)?;
    Ok(inst.module(module)?.expected_tau.clone())
}

/// The claimed MCM test ideal.
pub fn expected_tau_mcm(family_name: &str, params: &Params) -> Result<Ideal> {
    let inst = family(family_name)?.instantiate(params, None)?;
    inst.expected_mcm
        .ok_or_else(|| Error::Catalog(format!("{family_name} states no MCM test ideal")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_families_load_and_validate() {
        assert_eq!(families().len(), 11);
        for f in families() {
            for p in f.grid() {
                let inst = f
                    .instantiate(&p, None)
                    .unwrap_or_else(|e| panic!("{} {p}: {e}", f.name));
                assert!(!inst.modules.is_empty(), "{}", f.name);
            }
        }
    }

    #[test]
    fn domains() {
        let e = enumerate_family("An-dim1-odd", &Params::single("n", 4)).unwrap_err();
        assert!(matches!(e, Error::Domain(_)));
        assert!(e.to_string().contains("odd(n)"), "{e}");
        let e = enumerate_family("Dn-dim2", &Params::single("n", 3)).unwrap_err();
        assert!(e.to_string().contains("n >= 4"), "{e}");
        assert!(enumerate_family("An-dim2", &Params::none()).is_err());
        assert!(family("nope").is_err());
    }

    #[test]
    fn fields() {
        let f = family("E6").unwrap();
        assert!(matches!(
            f.instantiate(&Params::none(), Some(&Field::Rational)),
            Err(Error::Field(_))
        ));
        assert!(f.instantiate(&Params::none(), Some(&Field::prime(13).unwrap())).is_ok());
        assert!(f.instantiate(&Params::none(), Some(&Field::prime(5).unwrap())).is_err());
    }

    #[test]
    fn enumeration() {
        let an = enumerate_family("An-dim2", &Params::single("n", 3)).unwrap();
        let names: Vec<&str> = an.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["M1", "M2", "M3"]);
        assert_eq!(enumerate_family("E6", &Params::none()).unwrap().len(), 4);
        let ainf = enumerate_family("Ainf-dim1", &Params::single("N", 5)).unwrap();
        let names: Vec<&str> = ainf.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["I1", "I2", "I3", "I4", "I5", "Iinf"]);
    }

    #[test]
    fn claimed_ideals() {
        let tau = expected_tau_mcm("An-dim1-odd", &Params::single("n", 7)).unwrap();
        assert_eq!(tau.to_string(), "(x^3, y)");
        assert_eq!(
            expected_tau_mcm("X9-dim2", &Params::none()).unwrap().to_string(),
            "(x^2, z)"
        );
        assert_eq!(
            expected_tau_mcm("E8", &Params::none()).unwrap().to_string(),
            "(x, y^2, z)"
        );
        let t = expected_tau("An-dim2", &Params::single("n", 3), "M2").unwrap().unwrap();
        assert_eq!(t.to_string(), "(x, y^2)");
    }

    #[test]
    fn veronese() {
        let inst = veronese2_entry().instantiate(&Params::none(), None).unwrap();
        let zf = inst.modules[0].zform().unwrap();
        assert_eq!(
            zf.trace_ideal_cor(&inst.ctx).unwrap(),
            inst.ctx.ideal("(u, v, w)").unwrap()
        );
    }
}
