//! The JSON workspace document: a signature, named interpretations, an
//! optional knowledge base and a default feature set.
//!
//! ```json
//! {
//!   "signature": {"concepts": ["A"], "roles": ["r"], "individuals": ["a"]},
//!   "interpretations": {
//!     "I": {
//!       "domain": ["a", "u"],
//!       "concepts": {"A": ["a"]},
//!       "roles": {"r": [["a", "u"]]},
//!       "individuals": {"a": "a"}
//!     }
//!   },
//!   "kb": {"rbox": [], "tbox": ["A sub some r top"], "abox": ["a : A"]},
//!   "phi": "IO"
//! }
//! ```
//!
//! `domain` is either a list of element names or a count `n`, in which case
//! the elements are named `0` to `n-1`. QS-interpretations additionally
//! carry `qu` (per basic role, `[x, y, k]` triples for every edge) and `se`
//! (per role name, the elements in `∃r.Self`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use dlbisim_core::syntax::{parse_assertion, parse_gci, parse_role_axiom};
use dlbisim_core::{
    BasicRoleId, ElementSet, FeatureSet, Interpretation, InterpretationBuilder, KnowledgeBase,
    QSInterpretation, Signature,
};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub signature: SignatureDoc,
    pub interpretations: BTreeMap<String, InterpretationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kb: Option<KbDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureDoc {
    #[serde(default)]
    pub concepts: Vec<String>,
    #[serde(default)]
    pub roles: Vec<String>,
    #[serde(default)]
    pub individuals: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Domain {
    Count(usize),
    Names(Vec<String>),
}

/// An edge `[x, y, k]` with multiplicity `k`.
pub type Weighted = (String, String, u64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpretationDoc {
    pub domain: Domain,
    #[serde(default)]
    pub concepts: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub roles: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    pub individuals: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qu: Option<BTreeMap<String, Vec<Weighted>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub se: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KbDoc {
    #[serde(default)]
    pub rbox: Vec<String>,
    #[serde(default)]
    pub tbox: Vec<String>,
    #[serde(default)]
    pub abox: Vec<String>,
}

/// A loaded interpretation, with counts when the document provides them.
#[derive(Debug, Clone)]
pub enum Model {
    Plain(Interpretation),
    Counted(QSInterpretation),
}

impl Model {
    pub fn base(&self) -> &Interpretation {
        match self {
            Model::Plain(i) => i,
            Model::Counted(qs) => qs.base(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn basic_role_key(sig: &Signature, b: BasicRoleId) -> String {
    let name = &sig.role_names()[b.role];
    if b.inverse {
        format!("inv({name})")
    } else {
        name.clone()
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("document: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialise");
        s.push('\n');
        s
    }

    pub fn signature(&self) -> Result<Signature, CliError> {
        let s = &self.signature;
        Signature::new(&s.concepts, &s.roles, &s.individuals)
            .map_err(|e| invalid(format!("signature: {e}")))
    }

    /// The feature set given on the command line, else the document's,
    /// else the empty set.
    pub fn phi(&self, flag: Option<&str>) -> Result<FeatureSet, CliError> {
        let text = flag.or(self.phi.as_deref()).unwrap_or("");
        text.parse()
            .map_err(|e| CliError::Parse(format!("feature set {text:?}: {e}")))
    }

    /// The interpretation called `name`, or the only one when `name` is
    /// absent.
    pub fn model(&self, name: Option<&str>) -> Result<(String, Model), CliError> {
        let name = match name {
            Some(n) => n.to_string(),
            None if self.interpretations.len() == 1 => self
                .interpretations
                .keys()
                .next()
                .cloned()
                .unwrap_or_default(),
            None => {
                let names: Vec<&str> = self.interpretations.keys().map(String::as_str).collect();
                return Err(invalid(format!(
                    "choose an interpretation with --interp ({})",
                    names.join(", ")
                )));
            }
        };
        let doc = self
            .interpretations
            .get(&name)
            .ok_or_else(|| invalid(format!("no interpretation named {name:?}")))?;
        let model = doc
            .load(self.signature()?)
            .map_err(|e| invalid(format!("interpretation {name}: {e}")))?;
        Ok((name, model))
    }

    pub fn interpretation(&self, name: Option<&str>) -> Result<(String, Interpretation), CliError> {
        let (name, m) = self.model(name)?;
        match m {
            Model::Plain(i) => Ok((name, i)),
            Model::Counted(_) => Err(invalid(format!(
                "interpretation {name} carries counts; this command needs a plain one"
            ))),
        }
    }

    pub fn knowledge_base(&self) -> Result<KnowledgeBase, CliError> {
        let Some(kb) = &self.kb else {
            return Ok(KnowledgeBase::default());
        };
        let syntax = |what: &str, text: &str, e: dlbisim_core::syntax::SyntaxError| {
            CliError::Parse(format!("{what} {text:?}: {e}"))
        };
        Ok(KnowledgeBase {
            rbox: kb
                .rbox
                .iter()
                .map(|t| parse_role_axiom(t).map_err(|e| syntax("rbox axiom", t, e)))
                .collect::<Result<_, _>>()?,
            tbox: kb
                .tbox
                .iter()
                .map(|t| parse_gci(t).map_err(|e| syntax("tbox axiom", t, e)))
                .collect::<Result<_, _>>()?,
            abox: kb
                .abox
                .iter()
                .map(|t| parse_assertion(t).map_err(|e| syntax("assertion", t, e)))
                .collect::<Result<_, _>>()?,
        })
    }

    /// A document holding `models` under the given names, with the
    /// signature of the first.
    pub fn from_models<'a>(
        models: impl IntoIterator<Item = (String, &'a Model)>,
        kb: Option<KbDoc>,
        phi: Option<String>,
    ) -> Document {
        let mut interpretations = BTreeMap::new();
        let mut signature = None;
        for (name, m) in models {
            let sig = m.base().signature();
            signature.get_or_insert_with(|| SignatureDoc {
                concepts: sig.concept_names().iter().cloned().collect(),
                roles: sig.role_names().iter().cloned().collect(),
                individuals: sig.individual_names().iter().cloned().collect(),
            });
            interpretations.insert(name, InterpretationDoc::from_model(m));
        }
        Document {
            signature: signature.unwrap_or(SignatureDoc {
                concepts: Vec::new(),
                roles: Vec::new(),
                individuals: Vec::new(),
            }),
            interpretations,
            kb,
            phi,
        }
    }
}

impl InterpretationDoc {
    fn names(&self) -> Vec<String> {
        match &self.domain {
            Domain::Count(n) => (0..*n).map(|x| x.to_string()).collect(),
            Domain::Names(v) => v.clone(),
        }
    }

    pub fn load(&self, sig: Signature) -> Result<Model, String> {
        let names = self.names();
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        if index.len() != names.len() {
            return Err("duplicate element names in domain".to_string());
        }
        let elem = |x: &str| {
            index
                .get(x)
                .copied()
                .ok_or_else(|| format!("unknown element {x:?}"))
        };
        let mut b = InterpretationBuilder::new(sig.clone(), names.len())
            .element_names(names.iter().cloned());
        for (c, xs) in &self.concepts {
            b = b.concept(
                c,
                xs.iter().map(|x| elem(x)).collect::<Result<Vec<_>, _>>()?,
            );
        }
        for (r, ps) in &self.roles {
            let pairs = ps
                .iter()
                .map(|(x, y)| Ok((elem(x)?, elem(y)?)))
                .collect::<Result<Vec<_>, String>>()?;
            b = b.role(r, pairs);
        }
        for (a, x) in &self.individuals {
            b = b.individual(a, elem(x)?);
        }
        let base = b.build().map_err(|e| e.to_string())?;
        if self.qu.is_none() && self.se.is_none() {
            return Ok(Model::Plain(base));
        }
        let mut weights: BTreeMap<(BasicRoleId, usize, usize), u64> = BTreeMap::new();
        let keys: BTreeMap<String, BasicRoleId> = BasicRoleId::enumerate(sig.num_roles(), true)
            .into_iter()
            .map(|b| (basic_role_key(&sig, b), b))
            .collect();
        for (role, triples) in self.qu.iter().flatten() {
            let b = *keys
                .get(role)
                .ok_or_else(|| format!("unknown basic role {role:?} in qu"))?;
            for (x, y, k) in triples {
                weights.insert((b, elem(x)?, elem(y)?), *k);
            }
        }
        let mut se = vec![ElementSet::empty(names.len()); sig.num_roles()];
        for (role, xs) in self.se.iter().flatten() {
            let r = sig
                .role_id(role)
                .ok_or_else(|| format!("unknown role {role:?} in se"))?;
            for x in xs {
                se[r].insert(elem(x)?);
            }
        }
        QSInterpretation::new(
            base,
            |b, x, y| weights.get(&(b, x, y)).copied().unwrap_or(0),
            se,
        )
        .map(Model::Counted)
        .map_err(|e| e.to_string())
    }

    pub fn from_model(m: &Model) -> InterpretationDoc {
        let i = m.base();
        let sig = i.signature();
        let name = |x: usize| i.element_name(x).to_string();
        let mut doc = InterpretationDoc {
            domain: if i
                .element_names()
                .iter()
                .enumerate()
                .all(|(x, n)| *n == x.to_string())
            {
                Domain::Count(i.size())
            } else {
                Domain::Names(i.element_names().to_vec())
            },
            concepts: sig
                .concept_names()
                .iter()
                .enumerate()
                .map(|(c, n)| (n.clone(), i.concept(c).iter().map(name).collect()))
                .collect(),
            roles: sig
                .role_names()
                .iter()
                .enumerate()
                .map(|(r, n)| {
                    (
                        n.clone(),
                        i.role(r).pairs().map(|(x, y)| (name(x), name(y))).collect(),
                    )
                })
                .collect(),
            individuals: sig
                .individual_names()
                .iter()
                .enumerate()
                .map(|(a, n)| (n.clone(), name(i.individual(a))))
                .collect(),
            qu: None,
            se: None,
        };
        if let Model::Counted(qs) = m {
            let mut qu = BTreeMap::new();
            for b in BasicRoleId::enumerate(sig.num_roles(), true) {
                let rel = i.basic_role(b);
                let triples = rel
                    .pairs()
                    .map(|(x, y)| (name(x), name(y), qs.qu(b, x, y)))
                    .collect();
                qu.insert(basic_role_key(sig, b), triples);
            }
            doc.qu = Some(qu);
            doc.se = Some(
                sig.role_names()
                    .iter()
                    .enumerate()
                    .map(|(r, n)| (n.clone(), qs.se(r).iter().map(name).collect()))
                    .collect(),
            );
        }
        doc
    }
}
