use serde_json::{json, Map, Value};
use zlab_core::chambers::{construct_nef_with_null, enumerate_chambers};
use zlab_core::cutkosky::volume_l_eps;
use zlab_core::lattice::DivisorClass;
use zlab_core::scalar::{format_rational, parse_rational};
use zlab_core::weyl::{k3_reflection_volume, reflect, weyl_group_order, weyl_orbit};
use zlab_core::{
    chamber_of, destabilizing_numbers, on_chamber_boundary, stable_base_locus, vol, volume_polynomial,
    zariski_decompose, ChamberDescriptor, Rational, Support, SurfaceModel,
};

use crate::output::{self, csv_table};
use crate::surface::{parse_surface, serialize_surface};
use crate::{ClassArgs, Cli, CliError, Command, Format, SurfaceArgs, ORBIT_CAP_VAR};

const DEFAULT_ORBIT_CAP: usize = 10_000_000;

fn load(args: &SurfaceArgs) -> Result<SurfaceModel, CliError> {
    match (&args.surface, args.r) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            parse_surface(&text)
        }
        (None, Some(r)) => Ok(SurfaceModel::del_pezzo(r)?),
        (None, None) => Err(CliError::Usage("one of --surface or --r is required".into())),
    }
}

fn rationals(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .map(|s| parse_rational(s.trim()).map_err(|_| CliError::Usage(format!("cannot parse {s:?} as a rational"))))
        .collect()
}

fn class_in(model: &SurfaceModel, text: &str) -> Result<DivisorClass, CliError> {
    let coords = rationals(text)?;
    if coords.len() != model.rank() {
        return Err(CliError::Usage(format!("expected {} coordinates, got {}", model.rank(), coords.len())));
    }
    Ok(model.class(coords)?)
}

fn loaded(args: &ClassArgs) -> Result<(SurfaceModel, DivisorClass), CliError> {
    let model = load(&args.surface)?;
    let d = class_in(&model, &args.class)?;
    Ok((model, d))
}

fn single(text: &str) -> Result<Rational, CliError> {
    parse_rational(text.trim()).map_err(|_| CliError::Usage(format!("cannot parse {text:?} as a rational")))
}

fn orbit_cap() -> Result<usize, CliError> {
    match std::env::var(ORBIT_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{ORBIT_CAP_VAR}={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_ORBIT_CAP),
    }
}

fn cutkosky_entry(eps: &Rational) -> Result<Value, CliError> {
    let v = volume_l_eps(eps)?;
    let mut entry = output::quadratic(&v);
    entry["approx"] = json!(v.to_f64());
    Ok(entry)
}

enum Rendered {
    Json(Value),
    /// Already-canonical JSON text.
    Text(String),
    Table(Value, String),
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let rendered = match &cli.command {
        Command::Zariski(args) => {
            let (m, d) = loaded(args)?;
            let z = zariski_decompose(&m, &d)?;
            let negative: Map<String, Value> =
                z.negative.iter().map(|(i, x)| (m.curves()[*i].label.clone(), output::rational(x))).collect();
            Rendered::Json(json!({ "positive": output::class(&z.positive), "negative": negative }))
        }
        Command::Chamber(args) => {
            let (m, d) = loaded(args)?;
            let ch = chamber_of(&m, &d)?;
            Rendered::Json(json!({
                "support": output::support(&m, &ch.support),
                "boundary": on_chamber_boundary(&m, &d)?,
            }))
        }
        Command::Volume(args) => {
            let (m, d) = loaded(args)?;
            Rendered::Json(json!({ "volume": output::rational(&vol(&m, &d)?) }))
        }
        Command::Volpoly { surface, chamber } => {
            let m = load(surface)?;
            let labels: Vec<&str> = chamber.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let support = Support::from_labels(&m, &labels)?;
            let q = volume_polynomial(&m, &ChamberDescriptor::from(support.clone()))?;
            let n = m.rank();
            let matrix: Vec<Value> =
                (0..n).map(|i| Value::Array((0..n).map(|j| output::rational(&q.matrix[(i, j)])).collect())).collect();
            Rendered::Json(json!({ "chamber": output::support(&m, &support), "matrix": matrix }))
        }
        Command::ChambersEnum(surface) => {
            let m = load(surface)?;
            let e = enumerate_chambers(&m)?;
            let mut rows = Vec::new();
            let mut chambers = Vec::new();
            for ch in &e.chambers {
                let witness = construct_nef_with_null(&m, &ch.support)?;
                let mut row = vec![ch.support.labels(&m).join(";")];
                row.extend(witness.coords().iter().map(format_rational));
                rows.push(row);
                chambers.push(json!({ "support": output::support(&m, &ch.support), "witness": output::class(&witness) }));
            }
            let unrealizable: Vec<Value> = e.unrealizable.iter().map(|s| output::support(&m, s)).collect();
            let mut header = vec!["support"];
            header.extend(m.lattice().labels().iter().map(String::as_str));
            Rendered::Table(
                json!({ "chambers": chambers, "unrealizable": unrealizable }),
                csv_table(&header, rows),
            )
        }
        Command::Walk { surface, l, a } => {
            let m = load(surface)?;
            let l = class_in(&m, l)?;
            let a = match a {
                Some(a) => class_in(&m, a)?,
                None => m.ample().clone(),
            };
            let w = destabilizing_numbers(&m, &l, &a)?;
            let segments: Vec<Value> = w
                .segments
                .iter()
                .map(|s| {
                    json!({
                        "start": output::rational(&s.start),
                        "end": output::quadratic(&s.end),
                        "support": output::support(&m, &s.support.support),
                    })
                })
                .collect();
            let rows = w.segments.iter().map(|s| {
                vec![format_rational(&s.start), s.end.to_string(), s.end.to_f64().to_string(), s.support.support.labels(&m).join(";")]
            });
            Rendered::Table(
                json!({
                    "segments": segments,
                    "breakpoints": w.breakpoints.iter().map(output::rational).collect::<Vec<_>>(),
                    "bigness_threshold": output::quadratic(&w.bigness_threshold),
                }),
                csv_table(&["start", "end", "end_approx", "support"], rows),
            )
        }
        Command::StableBaseLocus(args) => {
            let (m, d) = loaded(args)?;
            Rendered::Json(json!({ "stable_base_locus": output::support(&m, &stable_base_locus(&m, &d)?) }))
        }
        Command::Delpezzo { r, count_curves } => {
            let m = SurfaceModel::del_pezzo(*r)?;
            if *count_curves {
                Rendered::Json(json!(m.curves().len()))
            } else {
                Rendered::Text(serialize_surface(&m))
            }
        }
        Command::WeylOrbit(args) => {
            let (m, d) = loaded(args)?;
            let orbit = weyl_orbit(&m, &d, orbit_cap()?)?;
            Rendered::Json(json!({ "size": orbit.len(), "orbit": orbit.iter().map(output::class).collect::<Vec<_>>() }))
        }
        Command::WeylOrder(surface) => {
            let m = load(surface)?;
            Rendered::Json(json!({ "order": weyl_group_order(&m, zlab_core::weyl::DEFAULT_GROUP_RANK_CAP)? }))
        }
        Command::K3Reflect { class, curve } => {
            let (m, p) = loaded(class)?;
            let idx = m.curve_index(curve)?;
            let reflected = reflect(&p, &m.curves()[idx].class)?;
            let v = k3_reflection_volume(&m, &p, idx)?;
            Rendered::Json(json!({
                "reflected": output::class(&reflected),
                "volume": output::rational(&v),
                "original_volume": output::rational(&p.square()),
            }))
        }
        Command::CutkoskyVol { eps } => Rendered::Json(cutkosky_entry(&single(eps)?)?),
        Command::CutkoskyScan { from, to, steps } => {
            let (lo, hi) = (single(from)?, single(to)?);
            if *steps == 0 {
                return Err(CliError::Usage("--steps must be positive".into()));
            }
            let n = Rational::from_integer((*steps).into());
            let mut entries = Vec::new();
            let mut rows = Vec::new();
            for k in 0..=*steps {
                let eps = &lo + (&hi - &lo) * Rational::from_integer(k.into()) / &n;
                let mut entry = cutkosky_entry(&eps)?;
                rows.push(vec![format_rational(&eps), entry["approx"].to_string()]);
                entry["eps"] = output::rational(&eps);
                entries.push(entry);
            }
            Rendered::Table(Value::Array(entries), csv_table(&["eps", "volume"], rows))
        }
    };
    match (rendered, cli.format) {
        (Rendered::Json(v) | Rendered::Table(v, _), Format::Json) => Ok(format!("{v}\n")),
        (Rendered::Text(t), Format::Json) => Ok(format!("{t}\n")),
        (Rendered::Table(_, csv), Format::Csv) => Ok(csv),
        (Rendered::Json(_) | Rendered::Text(_), Format::Csv) => {
            Err(CliError::Usage("--format csv is available for chambers-enum, walk and cutkosky-scan".into()))
        }
    }
}
