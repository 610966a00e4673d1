use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use repchar::charmap::{self, CharError};
use repchar::crossedcat::{suites, CrossedError, DeltaSMorphism};
use repchar::cychom::{self, CycHomError};
use repchar::exactlin::LinAlgError;
use repchar::fincat::{self, FinCatError, FinCategory, ModuleFunctor, SetValuedFunctor, Variance};
use repchar::groupkit::{FiniteGroup, FreeWord, GroupError};
use repchar::rephom::{self, HrError};

use crate::input::{self, InputKind};
use crate::output::{Output, Report};
use crate::{Command, Failure, Format};

fn linalg(e: LinAlgError) -> Failure {
    match e {
        LinAlgError::NotAComplex { .. } | LinAlgError::NotAChainMap { .. } | LinAlgError::ComplexShape(_) => {
            Failure::Internal(e.to_string())
        }
        _ => Failure::Validation(e.to_string()),
    }
}

impl From<CycHomError> for Failure {
    fn from(e: CycHomError) -> Self {
        match e {
            CycHomError::LinAlg(l) => linalg(l),
            CycHomError::Invariant(m) => Failure::Internal(m),
        }
    }
}

impl From<HrError> for Failure {
    fn from(e: HrError) -> Self {
        match e {
            HrError::LinAlg(l) => linalg(l),
            HrError::Invariant(m) => Failure::Internal(m),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<CharError> for Failure {
    fn from(e: CharError) -> Self {
        match e {
            CharError::LinAlg(l) => linalg(l),
            CharError::Invariant(m) => Failure::Internal(m),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<FinCatError> for Failure {
    fn from(e: FinCatError) -> Self {
        match e {
            FinCatError::LinAlg(l) => linalg(l),
            FinCatError::Invariant(m) => Failure::Internal(m),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<CrossedError> for Failure {
    fn from(e: CrossedError) -> Self {
        match e {
            CrossedError::Invariant(m) => Failure::Internal(m),
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure::Validation(e.to_string())
    }
}

pub fn run(cmd: &Command, format: Format, seed: u64) -> Result<Output, Failure> {
    let mut r = Report::new(format);
    match cmd {
        Command::Hc { group, max_degree, reduced } => hc(&mut r, group, *max_degree, *reduced)?,
        Command::Hr { model, max_degree, window } => hr(&mut r, model, *max_degree, *window)?,
        Command::Hr0 { presentation, gln } => hr0(&mut r, presentation, *gln)?,
        Command::Char { group, gln, element } => character(&mut r, group, *gln, element.as_deref())?,
        Command::TriangleCheck { group } => triangle(&mut r, group)?,
        Command::ShapiroCheck { instance, instances, max_objects, max_set, max_degree } => match instance {
            Some(p) => shapiro_file(&mut r, p, *max_degree)?,
            None => shapiro_random(&mut r, seed, *instances, *max_objects, *max_set, *max_degree)?,
        },
        Command::CatCheck { exhaustive_bound, random_bound, samples, morphism, compose } => {
            if morphism.is_empty() && compose.is_none() {
                let cfg = suites::SuiteConfig {
                    exhaustive_bound: *exhaustive_bound,
                    random_bound: *random_bound,
                    samples: *samples,
                    seed,
                };
                cat_suites(&mut r, &cfg)?;
            } else {
                cat_notation(&mut r, morphism, compose.as_deref())?;
            }
        }
        Command::Validate { file, category } => validate(&mut r, file, category.as_deref())?,
    }
    r.finish()
}

fn hc(r: &mut Report, path: &Path, n: usize, reduced: bool) -> Result<(), Failure> {
    let g = input::group(path)?;
    let dims = if reduced { cychom::reduced_hc_dims(&g, n)? } else { cychom::hc_dims(&g, n)? };
    let basis = cychom::hc0_basis(&g)?;
    r.row(["degree", "dim"]);
    for &(q, d) in &dims.0 {
        r.row([q, d]);
    }
    r.field("group_order", &g.order())?;
    r.field("reduced", &reduced)?;
    r.field("dims", &dims)?;
    r.field("hc0_basis", &basis)?;
    Ok(())
}

fn hr(r: &mut Report, path: &Path, n: usize, window: Option<i64>) -> Result<(), Failure> {
    let m = input::model(path)?;
    let answer = rephom::hr_derived_abelianization(&m, n)?;
    r.line(format!("# H1 = {}", answer.h1));
    for (k, g) in answer.higher_homotopy.iter().enumerate() {
        r.line(format!("# pi_{} = {g}", k + 1));
    }
    r.field("derived", &answer)?;
    match window {
        None => {
            r.row(["degree", "dim_per_weight"]);
            for (q, d) in answer.per_weight.iter().enumerate() {
                r.row([q, *d]);
            }
        }
        Some(b) => {
            let report = rephom::hr_bruteforce_window(&m, n, b)?;
            let unstable: Vec<String> = report.unstable_degrees.iter().map(ToString::to_string).collect();
            r.line(format!("# window {b}, unstable degrees: {}", if unstable.is_empty() { "none".into() } else { unstable.join(",") }));
            let disagreements = report.disagreements(&answer);
            r.line(format!("# agrees with derived answer on trusted degrees: {}", disagreements.is_empty()));
            r.row(["degree", "weight", "dim", "dim_next_window", "trusted"]);
            for (w, dims) in &report.at_bound {
                for (q, d) in dims.iter().enumerate() {
                    r.row([q.to_string(), w.clone(), d.to_string(), report.at_next_bound[w][q].to_string(), report.is_trusted(q).to_string()]);
                }
            }
            r.field("window", &report)?;
            r.field("disagreements", &disagreements)?;
            if !disagreements.is_empty() {
                r.fail();
            }
        }
    }
    Ok(())
}

fn hr0(r: &mut Report, path: &Path, gln: Option<usize>) -> Result<(), Failure> {
    let p = input::presentation(path)?;
    let d = rephom::hr_degree0(&p);
    r.line(format!("H1 = {}", d.h1));
    r.line(format!("ring = {}", d.ring));
    r.field("h1", &d.h1.to_string())?;
    r.field("ring", &d.ring.to_string())?;
    if let Some(n) = gln {
        if n == 0 {
            return Err(Failure::Validation("--gln must be positive".into()));
        }
        let ring = rephom::rep_ring_gln_degree0(&p, n);
        r.row(["variables".to_string(), ring.variables.join(" ")]);
        r.row(["inverse_symbols".to_string(), ring.inverse_symbols.join(" ")]);
        for e in &ring.ideal {
            r.row(["ideal", e.as_str()]);
        }
        r.field("gln", &ring)?;
    }
    Ok(())
}

fn character(r: &mut Report, path: &Path, gln: Option<usize>, element: Option<&str>) -> Result<(), Failure> {
    let v = input::read_value(path)?;
    match input::detect(&v, path)? {
        InputKind::Group => {
            if gln.is_some() {
                return Err(Failure::Validation("--gln needs a presentation, not a multiplication table".into()));
            }
            let g = input::group_from(&v, path)?;
            match element {
                Some(label) => {
                    let e = g
                        .element(label)
                        .ok_or_else(|| Failure::Validation(format!("unknown element {label:?}")))?;
                    let c = charmap::char0_gm_finite(&g, e)?;
                    r.row(["element", "character"]);
                    r.row([label, c.monomial.as_str()]);
                    r.field("character", &charmap::CharacterValue::Gm(c))?;
                }
                None => class_table(r, &g)?,
            }
        }
        InputKind::Presentation => {
            let p = input::presentation_from(&v, path)?;
            let words: Vec<FreeWord> = match element {
                Some(w) => vec![FreeWord::parse(w)?],
                None => (0..p.rank()).map(FreeWord::generator).collect(),
            };
            r.row(["element", "character"]);
            let mut values = Vec::new();
            for w in &words {
                let value = match gln {
                    Some(n) => {
                        let c = charmap::char0_gln(&p, w, n)?;
                        r.row([w.to_string(), c.trace.clone()]);
                        charmap::CharacterValue::Gln(c)
                    }
                    None => {
                        let c = charmap::char0_gm_presentation(&p, w)?;
                        r.row([w.to_string(), c.monomial.clone()]);
                        charmap::CharacterValue::Gm(c)
                    }
                };
                values.push((w.to_string(), value));
            }
            r.field("characters", &values)?;
        }
        other => return Err(Failure::Validation(format!("{}: expected a group, found {other:?}", path.display()))),
    }
    Ok(())
}

fn class_table(r: &mut Report, g: &FiniteGroup) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Row {
        class: String,
        size: usize,
        character: String,
    }
    let chi = charmap::char_chain_map_gm(g, 1)?;
    let mut rows = Vec::new();
    r.row(["class", "size", "character"]);
    for class in g.conjugacy_classes() {
        let c = charmap::char0_gm_finite(g, class[0])?;
        r.row([g.label(class[0]).to_string(), class.len().to_string(), c.monomial.clone()]);
        rows.push(Row { class: g.label(class[0]).into(), size: class.len(), character: c.monomial });
    }
    r.line(format!("# H_0 character rank = {}", chi.h0_rank));
    r.field("classes", &rows)?;
    r.field("h0_rank", &chi.h0_rank)?;
    Ok(())
}

fn triangle(r: &mut Report, path: &Path) -> Result<(), Failure> {
    let g = input::group(path)?;
    let t = charmap::check_triangle_degree0(&g)?;
    r.row(["hc0_dim".to_string(), t.hc0_dim.to_string()]);
    r.row(["hs0_dim".to_string(), t.hs0_dim.to_string()]);
    r.row(["hr0_dim".to_string(), t.hr0_dim.to_string()]);
    r.row(["character_rank".to_string(), t.character_rank.to_string()]);
    r.row(["triangle_holds".to_string(), t.holds().to_string()]);
    r.field("triangle", &t)?;
    r.field("holds", &t.holds())?;
    if !t.holds() {
        r.fail();
    }
    Ok(())
}

fn shapiro_file(r: &mut Report, path: &Path, n: usize) -> Result<(), Failure> {
    let v = input::read_value(path)?;
    let field = |k: &str| v.get(k).ok_or_else(|| Failure::Validation(format!("{}: missing field {k}", path.display())));
    let c = input::category_from(field("category")?, path)?;
    let f = input::set_functor_from(&c, field("functor")?, path)?;
    let x = input::module_functor_from(&c, field("coefficients")?, path)?;
    let rep = fincat::shapiro_check(&c, &f, &x, n)?;
    shapiro_rows(r, &[(c, rep)])
}

fn shapiro_random(r: &mut Report, seed: u64, count: usize, max_objects: usize, max_set: usize, n: usize) -> Result<(), Failure> {
    if max_objects == 0 {
        return Err(Failure::Validation("--max-objects must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = FiniteGroup::cyclic(2);
    let bz2 = FinCategory::one_object_group(&g);
    let x = ModuleFunctor::constant(&bz2, Variance::Contravariant);
    let mut instances = vec![(bz2.clone(), SetValuedFunctor::regular(&g, &bz2), x)];
    for _ in 0..count {
        instances.push(fincat::random_shapiro_instance(&mut rng, max_objects, max_set));
    }
    use rayon::prelude::*;
    let results: Vec<(FinCategory, fincat::ShapiroReport)> = instances
        .into_par_iter()
        .map(|(c, f, x)| fincat::shapiro_check(&c, &f, &x, n).map(|rep| (c, rep)))
        .collect::<Result<_, _>>()?;
    shapiro_rows(r, &results)
}

fn shapiro_rows(r: &mut Report, results: &[(FinCategory, fincat::ShapiroReport)]) -> Result<(), Failure> {
    let fmt = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    r.row(["instance", "objects", "morphisms", "elements_side", "base_side", "holds"]);
    for (i, (c, rep)) in results.iter().enumerate() {
        r.row([
            i.to_string(),
            c.num_objects().to_string(),
            c.num_morphisms().to_string(),
            fmt(&rep.elements_side),
            fmt(&rep.base_side),
            rep.holds.to_string(),
        ]);
    }
    let held = results.iter().filter(|(_, rep)| rep.holds).count();
    r.line(format!("# {held}/{} instances satisfy the comparison", results.len()));
    let reports: Vec<&fincat::ShapiroReport> = results.iter().map(|(_, rep)| rep).collect();
    r.field("instances", &reports)?;
    r.field("held", &held)?;
    if held != results.len() {
        r.fail();
    }
    Ok(())
}

fn cat_suites(r: &mut Report, cfg: &suites::SuiteConfig) -> Result<(), Failure> {
    let reports = suites::run_all(cfg);
    r.row(["suite", "checked", "failures"]);
    for s in &reports {
        r.row([s.name.to_string(), s.checked.to_string(), s.failures.len().to_string()]);
        for f in &s.failures {
            r.line(format!("# {}: {f}", s.name));
        }
    }
    let passed = reports.iter().filter(|s| s.passed()).count();
    if passed == reports.len() {
        r.line(format!("all {} suites passed", reports.len()));
    } else {
        r.line(format!("{} of {} suites failed", reports.len() - passed, reports.len()));
        r.fail();
    }
    r.field("suites", &reports)?;
    Ok(())
}

#[derive(Serialize)]
struct MorphismInfo {
    notation: String,
    source: usize,
    target: usize,
    underlying_map: Vec<usize>,
    monotone_part: Vec<usize>,
    permutation: Vec<usize>,
    cyclic: bool,
    psi_sym: String,
    abelianized: Vec<Vec<String>>,
}

fn describe(f: &DeltaSMorphism) -> MorphismInfo {
    let fac = f.factorize();
    let a = f.abelianize_psi_sym();
    MorphismInfo {
        notation: f.to_string(),
        source: f.source(),
        target: f.target(),
        underlying_map: f.underlying_map(),
        monotone_part: fac.g,
        permutation: fac.sigma,
        cyclic: f.is_cyclic(),
        psi_sym: f.psi_sym().to_string(),
        abelianized: (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j).to_string()).collect()).collect(),
    }
}

fn cat_notation(r: &mut Report, morphisms: &[String], compose: Option<&[String]>) -> Result<(), Failure> {
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let mut infos = Vec::new();
    for s in morphisms {
        let f = DeltaSMorphism::parse(s)?;
        let i = describe(&f);
        r.row(["morphism", i.notation.as_str()]);
        r.row(["arity".to_string(), format!("[{}] -> [{}]", i.source, i.target)]);
        r.row(["underlying_map".to_string(), join(&i.underlying_map)]);
        r.row(["factorization".to_string(), format!("g={} sigma={}", join(&i.monotone_part), join(&i.permutation))]);
        r.row(["cyclic".to_string(), i.cyclic.to_string()]);
        r.row(["psi_sym", i.psi_sym.as_str()]);
        for row in &i.abelianized {
            r.row(["abelianized".to_string(), row.join(" ")]);
        }
        infos.push(i);
    }
    r.field("morphisms", &infos)?;
    if let Some([a, b]) = compose {
        let (f, g) = (DeltaSMorphism::parse(a)?, DeltaSMorphism::parse(b)?);
        let h = f.compose(&g)?;
        r.row(["composite".to_string(), h.to_string()]);
        r.field("composite", &h.to_string())?;
    }
    Ok(())
}

fn validate(r: &mut Report, path: &Path, category: Option<&Path>) -> Result<(), Failure> {
    let v = input::read_value(path)?;
    let kind = input::detect(&v, path)?;
    let outcome: Result<String, Failure> = match kind {
        InputKind::Group => input::group_from(&v, path).map(|g| format!("group of order {}", g.order())),
        InputKind::Presentation => input::presentation_from(&v, path).map(|p| format!("presentation of rank {}", p.rank())),
        InputKind::Model => input::model_from(&v, path).map(|m| format!("simplicial group model up to level {}", m.truncation())),
        InputKind::SimplicialSet => {
            input::simplicial_set_from(&v, path).map(|k| format!("reduced simplicial set with {} simplices", k.simplices().len()))
        }
        InputKind::Category => input::category_from(&v, path)
            .map(|c| format!("category with {} objects and {} morphisms", c.num_objects(), c.num_morphisms())),
        InputKind::SetFunctor | InputKind::ModuleFunctor => {
            let cpath = category.ok_or_else(|| Failure::Validation("validating a functor needs --category".into()))?;
            let c = input::category_from(&input::read_value(cpath)?, cpath)?;
            if kind == InputKind::SetFunctor {
                input::set_functor_from(&c, &v, path).map(|_| "set-valued functor".to_string())
            } else {
                input::module_functor_from(&c, &v, path).map(|_| "linear functor".to_string())
            }
        }
    };
    match outcome {
        Ok(what) => {
            r.line("ok");
            r.field("kind", &what)?;
        }
        Err(Failure::Validation(msg)) => {
            r.line(format!("invalid: {msg}"));
            r.field("error", &msg)?;
            r.fail();
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broken_complexes_are_internal_errors() {
        let e = CycHomError::LinAlg(LinAlgError::ComplexShape("d_2 has 3 columns".into()));
        assert!(matches!(Failure::from(e), Failure::Internal(_)));
        assert!(matches!(Failure::from(HrError::Invariant("d^2 != 0".into())), Failure::Internal(_)));
    }

    #[test]
    fn bad_inputs_are_validation_errors() {
        let e = GroupError::InvalidGroup("empty".into());
        assert!(matches!(Failure::from(e), Failure::Validation(_)));
    }
}
