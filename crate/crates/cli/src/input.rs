use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;

use repchar::fincat::{FinCategory, FinCategoryJson, ModuleFunctor, ModuleFunctorJson, SetFunctorJson, SetValuedFunctor};
use repchar::groupkit::{
    Cell, ExplicitModelJson, FiniteGroup, FiniteGroupJson, GroupPresentation, PresentationJson, ReducedSimplicialSet,
    ReducedSimplicialSetJson, SimplicialGroupModel, SimplicialModelJson,
};

use crate::Failure;

pub fn read_value(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("{}: cannot read: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("{}: malformed JSON: {e}", path.display())))
}

/// Deserializes with the path of the offending field in the message.
pub fn typed<T: DeserializeOwned>(v: &Value, path: &Path, prefix: &str) -> Result<T, Failure> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let field = e.path().to_string();
        let field = match (prefix.is_empty(), field.as_str()) {
            (true, ".") => "top level".to_string(),
            (true, _) => field,
            (false, ".") => prefix.to_string(),
            (false, _) => format!("{prefix}.{field}"),
        };
        Failure::Validation(format!("{}: field {field}: {}", path.display(), e.inner()))
    })
}

fn field<'a>(v: &'a Value, path: &Path, name: &str) -> Result<&'a Value, Failure> {
    v.get(name).ok_or_else(|| Failure::Validation(format!("{}: missing field {name}", path.display())))
}

/// What a JSON input file describes, guessed from its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Group,
    Presentation,
    Model,
    SimplicialSet,
    Category,
    SetFunctor,
    ModuleFunctor,
}

pub fn detect(v: &Value, path: &Path) -> Result<InputKind, Failure> {
    let has = |k: &str| v.get(k).is_some();
    let kind = if has("table") {
        InputKind::Group
    } else if has("N") {
        InputKind::Model
    } else if has("rank") {
        InputKind::Presentation
    } else if has("simplices") {
        InputKind::SimplicialSet
    } else if has("sets") {
        InputKind::SetFunctor
    } else if has("dims") {
        InputKind::ModuleFunctor
    } else if has("objects") || has("kind") || has("morphisms") {
        InputKind::Category
    } else {
        return Err(Failure::Validation(format!(
            "{}: cannot tell what this file describes (expected a group table, presentation, model, simplicial set, category or functor)",
            path.display()
        )));
    };
    Ok(kind)
}

pub fn group(path: &Path) -> Result<FiniteGroup, Failure> {
    let v = read_value(path)?;
    group_from(&v, path)
}

pub fn group_from(v: &Value, path: &Path) -> Result<FiniteGroup, Failure> {
    let j: FiniteGroupJson = typed(v, path, "")?;
    FiniteGroup::from_json(&j).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

pub fn presentation_from(v: &Value, path: &Path) -> Result<GroupPresentation, Failure> {
    let j: PresentationJson = typed(v, path, "")?;
    GroupPresentation::from_json(&j).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

pub fn presentation(path: &Path) -> Result<GroupPresentation, Failure> {
    presentation_from(&read_value(path)?, path)
}

pub fn model_from(v: &Value, path: &Path) -> Result<SimplicialGroupModel, Failure> {
    let truncation: usize = typed(field(v, path, "N")?, path, "N")?;
    let j = if v.get("cells").is_some() {
        let cells: Vec<Cell> = typed(field(v, path, "cells")?, path, "cells")?;
        SimplicialModelJson::Cells { truncation, cells }
    } else if let Some(k) = v.get("reduced_simplicial_set") {
        let reduced_simplicial_set: ReducedSimplicialSetJson = typed(k, path, "reduced_simplicial_set")?;
        SimplicialModelJson::Milnor { truncation, reduced_simplicial_set }
    } else if let Some(k) = v.get("constant_free_rank") {
        let constant_free_rank: usize = typed(k, path, "constant_free_rank")?;
        SimplicialModelJson::Constant { truncation, constant_free_rank }
    } else {
        SimplicialModelJson::Explicit(typed::<ExplicitModelJson>(v, path, "")?)
    };
    j.build().map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

pub fn model(path: &Path) -> Result<SimplicialGroupModel, Failure> {
    model_from(&read_value(path)?, path)
}

pub fn simplicial_set_from(v: &Value, path: &Path) -> Result<ReducedSimplicialSet, Failure> {
    let j: ReducedSimplicialSetJson = typed(v, path, "")?;
    ReducedSimplicialSet::from_json(&j).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

pub fn category_from(v: &Value, path: &Path) -> Result<FinCategory, Failure> {
    let j: FinCategoryJson = typed(v, path, "")?;
    FinCategory::from_json(&j).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

pub fn set_functor_from(c: &FinCategory, v: &Value, path: &Path) -> Result<SetValuedFunctor, Failure> {
    let j: SetFunctorJson = typed(v, path, "")?;
    SetValuedFunctor::from_json(c, &j).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

pub fn module_functor_from(c: &FinCategory, v: &Value, path: &Path) -> Result<ModuleFunctor, Failure> {
    let j: ModuleFunctorJson = typed(v, path, "")?;
    ModuleFunctor::from_json(c, &j).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}
