use num_bigint::BigInt;
use num_rational::Ratio;
use ptl_core::arith::is_prime;
use ptl_core::cartier::{a_number, cartier_matrix_hyperelliptic, p_rank, p_rank_additive_cover};
use ptl_core::curves::{CurveModel, SuperellipticModel};
use ptl_core::cyclic::{
    self, datum_canonicalize, is_special, shimura_dim, signature, MonodromyDatum, Signature, MOONEN_TABLE, SPECIAL_N5,
};
use ptl_core::families;
use ptl_core::polygon::{NewtonPolygon, Slope};
use ptl_core::strata::{self, EoType, SymmetricNp};
use ptl_core::zeta::{self, LPolynomial};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::spec::{parse_curve_spec, parse_family_spec};

fn slope_str(s: &Slope) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

fn slopes_json(np: &NewtonPolygon) -> Value {
    json!(np.slope_list().iter().map(slope_str).collect::<Vec<_>>())
}

fn coeffs_json(l: &LPolynomial) -> Value {
    json!(l.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>())
}

fn ratio_str<T: std::fmt::Display>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn model_kind(model: &CurveModel) -> &'static str {
    match model {
        CurveModel::Hyperelliptic(_) => "hyperelliptic",
        CurveModel::Superelliptic(_) => "superelliptic",
        CurveModel::AdditiveCover(_) => "additive",
    }
}

fn parse_polygon(text: &str) -> Result<SymmetricNp, CliError> {
    let np: NewtonPolygon = text.parse()?;
    Ok(NewtonPolygon::symmetric(np.segments().to_vec())?)
}

fn zeta_data(model: &CurveModel) -> Result<(LPolynomial, NewtonPolygon, bool), CliError> {
    let l = zeta::l_polynomial(model)?;
    let r = model.field().degree() as u32;
    let np = zeta::newton_polygon(&l, r);
    let manin = zeta::is_supersingular_manin(&l, r);
    if manin != np.is_supersingular() {
        return Err(CliError::Internal(format!("Manin test ({manin}) disagrees with the Newton polygon {np}")));
    }
    Ok((l, np, manin))
}

pub fn invariants(spec: &str) -> Result<Value, CliError> {
    let model = parse_curve_spec(spec)?;
    let g = model.genus()?;
    let (l, np, ss) = zeta_data(&model)?;
    let mut a = Value::Null;
    let cartier_rank = match &model {
        CurveModel::Hyperelliptic(h) if model.field().characteristic() != 2 => {
            let m = cartier_matrix_hyperelliptic(h)?;
            a = json!(a_number(&m));
            Some(p_rank(&m))
        }
        CurveModel::AdditiveCover(c) => Some(p_rank_additive_cover(c)? as usize),
        _ => None,
    };
    if let Some(f) = cartier_rank {
        if f != np.p_rank() {
            return Err(CliError::Internal(format!(
                "p-rank {f} from the Cartier operator disagrees with slope-0 multiplicity {}",
                np.p_rank()
            )));
        }
    }
    Ok(json!({
        "model": model_kind(&model),
        "field": model.field().to_string(),
        "genus": g,
        "a_number": a,
        "p_rank": np.p_rank(),
        "l_polynomial": coeffs_json(&l),
        "newton_polygon": np.to_string(),
        "slopes": slopes_json(&np),
        "supersingular": ss,
    }))
}

pub fn zeta(spec: &str) -> Result<Value, CliError> {
    let model = parse_curve_spec(spec)?;
    let g = model.genus()? as usize;
    let (l, np, ss) = zeta_data(&model)?;
    let counts: Vec<String> = l.predicted_counts(g).iter().map(BigInt::to_string).collect();
    Ok(json!({
        "field": model.field().to_string(),
        "q": l.q(),
        "genus": g,
        "point_counts": counts,
        "l_polynomial": coeffs_json(&l),
        "l_polynomial_text": l.to_string(),
        "newton_polygon": np.to_string(),
        "slopes": slopes_json(&np),
        "p_rank": np.p_rank(),
        "supersingular": ss,
    }))
}

pub struct StrataQuery<'a> {
    pub np: Option<&'a str>,
    pub add_ordinary: usize,
    pub compare: Option<(&'a str, &'a str)>,
    pub list: Option<usize>,
    pub eo_table: Option<usize>,
    pub ss_dim: Option<usize>,
}

fn polygon_row(xi: &SymmetricNp) -> Result<Value, CliError> {
    let g = xi.genus();
    let audit = strata::unlikely_audit(g, xi)?;
    Ok(json!({
        "polygon": xi.to_string(),
        "genus": g,
        "sdim": strata::sdim(xi),
        "codim": audit.codim,
        "p_rank": xi.p_rank(),
        "unlikely": audit.unlikely,
    }))
}

fn eo_row(nu: &EoType) -> Value {
    let inv = strata::eo_invariants(nu);
    json!({
        "name": strata::eo_label(nu),
        "cod": inv.codim,
        "f": inv.p_rank,
        "a": inv.a_number,
        "nu": nu.nu(),
        "mu": inv.young.mu(),
        "dim": inv.dim,
    })
}

pub const EO_COLUMNS: &[&str] = &["name", "cod", "f", "a", "nu", "mu", "dim"];
pub const POLYGON_COLUMNS: &[&str] = &["polygon", "genus", "sdim", "codim", "p_rank", "unlikely"];

pub fn strata(q: &StrataQuery<'_>) -> Result<Value, CliError> {
    let modes = [q.np.is_some(), q.compare.is_some(), q.list.is_some(), q.eo_table.is_some(), q.ss_dim.is_some()];
    if modes.iter().filter(|&&m| m).count() != 1 {
        return Err(CliError::Invalid("give exactly one of --np, --compare, --list, --eo-table, --ss-dim".into()));
    }
    if let Some(text) = q.np {
        let xi = strata::np_add_ordinary(&parse_polygon(text)?, q.add_ordinary);
        let audit = strata::unlikely_audit(xi.genus(), &xi)?;
        return Ok(json!({
            "polygon": xi.to_string(),
            "slopes": slopes_json(&xi),
            "genus": xi.genus(),
            "sdim": strata::sdim(&xi),
            "codim": audit.codim,
            "dim_ag": audit.dim_ag,
            "dim_mg": audit.dim_mg,
            "unlikely": audit.unlikely,
            "p_rank": xi.p_rank(),
        }));
    }
    if let Some((a, b)) = q.compare {
        let (x, y) = (parse_polygon(a)?, parse_polygon(b)?);
        let order = strata::np_compare(&x, &y)?;
        return Ok(json!({"left": x.to_string(), "right": y.to_string(), "order": order.as_str()}));
    }
    if let Some(g) = q.list {
        check_genus(g)?;
        let rows = strata::symmetric_nps(g).iter().map(polygon_row).collect::<Result<Vec<_>, _>>()?;
        return Ok(json!({"genus": g, "count": rows.len(), "polygons": rows}));
    }
    if let Some(g) = q.eo_table {
        let mut all = strata::eo_enumerate(g)?;
        all.reverse();
        let rows: Vec<Value> = all.iter().map(eo_row).collect();
        return Ok(json!({"genus": g, "count": rows.len(), "types": rows}));
    }
    let g = q.ss_dim.unwrap();
    check_genus(g)?;
    Ok(json!({"genus": g, "ss_locus_dim": strata::ss_locus_dim(g)}))
}

fn check_genus(g: usize) -> Result<(), CliError> {
    if g == 0 {
        return Err(CliError::Invalid("genus must be positive".into()));
    }
    if g > 40 {
        return Err(CliError::Budget(format!("genus {g} exceeds the enumeration limit 40")));
    }
    Ok(())
}

pub fn eo(nu: Option<&[u32]>, genus: Option<usize>, add_ordinary: usize) -> Result<Value, CliError> {
    match (nu, genus) {
        (Some(nu), None) => {
            let t = strata::eo_add_ordinary(&EoType::new(nu.to_vec())?, add_ordinary);
            let mut row = eo_row(&t);
            row["genus"] = json!(t.genus());
            Ok(row)
        }
        (None, Some(g)) => {
            let rows: Vec<Value> = strata::eo_enumerate(g)?.iter().map(eo_row).collect();
            Ok(json!({"genus": g, "count": rows.len(), "types": rows}))
        }
        _ => Err(CliError::Invalid("give exactly one of --nu, --genus".into())),
    }
}

pub fn kottwitz(m: u32, sig: &[u32], p: u64, admissible: bool) -> Result<Value, CliError> {
    if !is_prime(p) {
        return Err(CliError::Invalid(format!("{p} is not prime")));
    }
    let sig = Signature::new(m, sig.to_vec())?;
    let dec = cyclic::orbits(m, p)?;
    let mu = cyclic::mu_ordinary(&sig, p)?;
    let basic = cyclic::basic_polygon(&sig, p)?;
    let orbits: Vec<Value> = dec
        .orbits
        .iter()
        .enumerate()
        .map(|(i, o)| {
            json!({
                "elements": o.elements,
                "size": o.len(),
                "dual": dec.orbits[o.dual].elements[0],
                "self_dual": o.is_self_dual(i),
            })
        })
        .collect();
    let mut out = json!({
        "m": m,
        "p": p,
        "signature": sig.values(),
        "genus": sig.genus(),
        "orbits": orbits,
        "mu_ordinary": mu.to_string(),
        "mu_ordinary_slopes": slopes_json(&mu),
        "basic": basic.to_string(),
        "p_rank_bound": cyclic::p_rank_bound(&sig, p)?,
    });
    if admissible {
        let set = cyclic::admissible_set(&sig, p)?;
        let rows = set.polygons.iter().map(polygon_row).collect::<Result<Vec<_>, _>>()?;
        out["admissible"] = json!(rows);
    }
    Ok(out)
}

fn golden_label(canonical: &MonodromyDatum) -> Option<&'static str> {
    MOONEN_TABLE
        .iter()
        .map(|r| (r.label, r.m, r.a))
        .chain(SPECIAL_N5.iter().copied())
        .find(|&(_, m, a)| MonodromyDatum::new(m, a.to_vec()).is_ok_and(|d| &datum_canonicalize(&d) == canonical))
        .map(|(label, _, _)| label)
}

fn datum_row(d: &MonodromyDatum) -> Result<Value, CliError> {
    let sig = signature(d)?;
    let canonical = datum_canonicalize(d);
    Ok(json!({
        "m": d.m(),
        "n": d.n(),
        "a": d.a(),
        "canonical": canonical.a(),
        "genus": d.genus(),
        "signature": sig.values(),
        "shimura_dim": shimura_dim(&sig),
        "special": is_special(d)?,
        "label": golden_label(&canonical),
    }))
}

pub const DATUM_COLUMNS: &[&str] = &["label", "m", "n", "a", "genus", "signature", "shimura_dim"];

pub fn special(datum: Option<(u32, &[u32])>, range: Option<(u32, usize)>) -> Result<Value, CliError> {
    match (datum, range) {
        (Some((m, a)), None) => datum_row(&MonodromyDatum::new(m, a.to_vec())?),
        (None, Some((m_max, n_max))) => {
            let found = cyclic::special_scan(m_max, n_max)?;
            let rows = found.iter().map(datum_row).collect::<Result<Vec<_>, _>>()?;
            let unlisted = rows.iter().filter(|r| r["label"].is_null()).count();
            Ok(json!({"m_max": m_max, "n_max": n_max, "count": rows.len(), "unlisted": unlisted, "data": rows}))
        }
        _ => Err(CliError::Invalid("give either --m and --a, or --m-max and --n-max".into())),
    }
}

pub fn cm(m: u32, a: &[u32], p: u64, verify: bool) -> Result<Value, CliError> {
    if !is_prime(p) {
        return Err(CliError::Invalid(format!("{p} is not prime")));
    }
    let datum = MonodromyDatum::new(m, a.to_vec())?;
    let sig = signature(&datum)?;
    let np = cyclic::cm_newton_polygon(&datum, p)?;
    let criterion = if m % 2 == 1 { json!(cyclic::ss_criterion_cm(m, p)?) } else { Value::Null };
    let mut out = json!({
        "m": m,
        "a": a,
        "p": p,
        "genus": datum.genus(),
        "signature": sig.values(),
        "newton_polygon": np.to_string(),
        "slopes": slopes_json(&np),
        "supersingular": np.is_supersingular(),
        "order_criterion": criterion,
    });
    if verify {
        // y^m = x^{a_1} (x - 1)^{a_2}; the third branch point is at infinity
        let field = ptl_core::arith::Field::prime(p)?;
        let model = CurveModel::Superelliptic(SuperellipticModel {
            branch_points: vec![field.zero(), field.one()],
            field,
            m,
            exponents: a[..2].to_vec(),
        });
        let (l, counted, _) = zeta_data(&model)?;
        out["zeta"] = json!({
            "l_polynomial": coeffs_json(&l),
            "newton_polygon": counted.to_string(),
            "agree": counted == np,
        });
    }
    Ok(out)
}

pub fn scan(family: &str) -> Result<Value, CliError> {
    let fam = parse_family_spec(family)?;
    let r = families::nonordinary_census(&fam)?;
    let by_rank: serde_json::Map<String, Value> = r.by_p_rank.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let by_a: serde_json::Map<String, Value> = r.by_a_number.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    Ok(json!({
        "family": family,
        "field": r.field.to_string(),
        "parameters": r.field.order(),
        "scanned": r.scanned,
        "excluded": r.excluded,
        "genus": r.genus,
        "non_ordinary": r.non_ordinary,
        "by_p_rank": by_rank,
        "by_a_number": by_a,
        "heuristic_ratio": r.heuristic_ratio.as_ref().map(ratio_str),
    }))
}

fn mass_row(p: u64) -> Result<Value, CliError> {
    let (mass, expected) = families::mass_formula_check(p)?;
    let legendre = if p >= 5 { json!(families::legendre_ss_count(p)?) } else { Value::Null };
    let classes = families::ss_j_count(p)?;
    Ok(json!({
        "p": p,
        "legendre_ss_count": legendre,
        "ss_j_count": classes,
        "mass": ratio_str(&mass),
        "expected": ratio_str(&expected),
    }))
}

pub const MASS_COLUMNS: &[&str] = &["p", "legendre_ss_count", "ss_j_count", "mass", "expected"];

pub fn mass(p: Option<u64>, p_max: Option<u64>) -> Result<Value, CliError> {
    match (p, p_max) {
        (Some(p), None) => {
            if !is_prime(p) {
                return Err(CliError::Invalid(format!("{p} is not prime")));
            }
            mass_row(p)
        }
        (None, Some(n)) => {
            if n > families::MAX_ELLIPTIC_PRIME {
                return Err(CliError::Budget(format!("p-max {n} exceeds {}", families::MAX_ELLIPTIC_PRIME)));
            }
            let rows = (2..=n).filter(|&p| is_prime(p)).map(mass_row).collect::<Result<Vec<_>, _>>()?;
            Ok(json!({"p_max": n, "count": rows.len(), "primes": rows}))
        }
        _ => Err(CliError::Invalid("give exactly one of --p, --p-max".into())),
    }
}

pub fn ckp(p: u64, delta: u64) -> Result<Value, CliError> {
    let d = families::ckp_genus_identity(p, delta)?;
    let runs: Vec<Value> = d.runs.iter().map(|&(s, r)| json!({"s": s, "r": r})).collect();
    Ok(json!({
        "p": p,
        "delta": delta,
        "runs": runs,
        "genus": d.genus.to_string(),
        "expected": (BigInt::from(delta) * p * (p - 1) / 2u32).to_string(),
    }))
}
