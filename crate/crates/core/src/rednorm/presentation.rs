//! The presentation file format `skvpres/1` and its Fitting-invariant report.
//!
//! ```json
//! {"schema": "skvpres/1",
//!  "matrix": [[{"1": 1, "j": 1}], [{"1": 4}]],
//!  "module": {"factors": [4], "action": {"j": [[-1]]}}}
//! ```
//!
//! `matrix` is the a×b matrix h of Λ^a → Λ^b ↠ M over the fixture group; maximal minors select b rows.
//! `module` is optional and, when present, is checked against the certified 𝓗 elements.

use std::sync::Arc;

use serde_json::json;

use super::fitting::{
    annihilation_check, fitting_of_presentation, FiniteGModule, FittingInvariant,
    PresentationModule,
};
use super::gr_matrix::GroupRingMatrix;
use super::hset::certified_h;
use super::norm::Realization;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;

pub const PRESENTATION_SCHEMA: &str = "skvpres/1";

#[derive(Clone, Debug)]
pub struct PresentationFile {
    pub presentation: PresentationModule,
    pub module: Option<FiniteGModule>,
    pub description: Option<String>,
}

impl PresentationFile {
    pub fn from_json(group: &Arc<FiniteGroup>, v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("presentation file must be an object".into()))?;
        for k in obj.keys() {
            if !["schema", "matrix", "module", "description"].contains(&k.as_str()) {
                return Err(Error::Parse(format!(
                    "unknown field {k:?} in presentation file"
                )));
            }
        }
        match obj.get("schema").and_then(|s| s.as_str()) {
            Some(PRESENTATION_SCHEMA) => {}
            other => {
                return Err(Error::Parse(format!(
                    "schema: expected {PRESENTATION_SCHEMA:?}, found {other:?}"
                )))
            }
        }
        let m = obj
            .get("matrix")
            .ok_or_else(|| Error::Parse("matrix: missing".into()))?;
        let h = GroupRingMatrix::from_json(group, m)
            .map_err(|e| Error::Parse(format!("matrix: {e}")))?;
        let presentation =
            PresentationModule::new(h).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
        let module = match obj.get("module") {
            Some(m) => Some(
                FiniteGModule::from_json(group, m)
                    .map_err(|e| Error::Parse(format!("module: {e}")))?,
            ),
            None => None,
        };
        let description = obj
            .get("description")
            .and_then(|d| d.as_str())
            .map(str::to_string);
        Ok(PresentationFile {
            presentation,
            module,
            description,
        })
    }

    pub fn from_json_str(group: &Arc<FiniteGroup>, text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("presentation file: {e}")))?;
        Self::from_json(group, &v)
    }
}

/// Fitting generators, the star adjoint for quadratic presentations and the annihilation check.
#[derive(Clone, Debug)]
pub struct FittingReport {
    pub fitting: FittingInvariant,
    pub json: serde_json::Value,
    /// None when no module was given; otherwise whether every certified h·f kills it.
    pub annihilated: Option<bool>,
}

pub fn fitting_report(real: &Realization, file: &PresentationFile) -> Result<FittingReport> {
    let h = &file.presentation.h;
    let fitting = fitting_of_presentation(&file.presentation, real)?;
    let generators: Vec<_> = fitting
        .generators
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "rows": fitting.row_sets.get(i),
                "element": f.to_json(true),
            })
        })
        .collect();
    let mut json = json!({
        "rows": h.rows(),
        "cols": h.cols(),
        "quadratic": file.presentation.is_quadratic(),
        "orientation": "maximal minors select cols-many rows of the matrix",
        "equivalence": fitting.equivalence_tag,
        "generators": generators,
    });
    if let Some(d) = &file.description {
        json["description"] = json!(d);
    }
    if file.presentation.is_quadratic() {
        let star = real.star_adjoint(h)?;
        json["starAdjoint"] = json!({
            "adjoint": star.adjoint.to_json(),
            "identity": "adjoint*h = h*adjoint = nr(h)*identity, verified",
        });
    }
    let mut annihilated = None;
    if let Some(module) = &file.module {
        let hs = certified_h(real);
        let elements: Vec<_> = hs.iter().map(|h| h.element.clone()).collect();
        let violations = annihilation_check(&fitting, module, &elements)?;
        annihilated = Some(violations.is_empty());
        json["annihilation"] = json!({
            "module": module.to_json(),
            "h": hs.iter().map(|h| json!({"element": h.element.to_json(), "status": h.status.tag(), "note": h.note})).collect::<Vec<_>>(),
            "status": if violations.is_empty() { "annihilated" } else { "violated" },
            "conservative": "Fitt of this presentation is contained in the maximal Fitting invariant",
            "violations": violations.iter().map(|v| json!({
                "h": v.h_index,
                "generator": v.generator_index,
                "basisVector": v.basis_vector,
                "image": v.image,
            })).collect::<Vec<_>>(),
        });
    }
    Ok(FittingReport {
        fitting,
        json,
        annihilated,
    })
}
