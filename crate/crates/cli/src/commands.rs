//! One function per subcommand, each producing a [`Document`].

use altiset::collective::{collective_altiset, pairwise_elimination};
use altiset::dependence::{
    decreasing_decomposition, decreasingness_index, epsilon, increasing_decomposition, increasingness_index,
    PointSet2D,
};
use altiset::domains::{evolve_with, GridMeasure, VoronoiMeasure, DEFAULT_RESOLUTION};
use altiset::geoalt::{
    geo_altiset_oracle, record_events, skyline_circular, skyline_contour, skyline_recursive, DistanceMode, Point,
    Space, SummitField, DISTANCE_TOLERANCE,
};
use altiset::induced::{Direction, OrderSystem};
use altiset::io::{self, ColumnSpec};
use altiset::layers::{chain_coloring, eval_chain, upper_layers, ChainTerm};
use altiset::{ElementSet, Error, Key, Universe};
use serde_json::{json, Value};

use crate::output::{CliError, Document, Input};
use crate::{
    AltisetArgs, CollectiveArgs, CollectiveMethod, CorrelateArgs, EvolveArgs, LayersArgs, SkylineArgs, SkylineMethod,
};

fn sets(sets: &[ElementSet]) -> Value {
    json!(sets.iter().map(|s| s.iter().collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Indices (or labels) from `--subset`, checked against the universe.
fn resolve_subset(items: Option<&[String]>, universe: &Universe) -> Result<Option<ElementSet>, CliError> {
    let Some(items) = items else { return Ok(None) };
    let mut subset = ElementSet::new();
    for item in items {
        let item = item.trim();
        let by_label = universe.labels().and_then(|ls| ls.iter().position(|l| l == item));
        let index = match (by_label, item.parse::<usize>()) {
            (Some(i), _) | (None, Ok(i)) => i,
            (None, Err(_)) => return Err(Error::Argument(format!("--subset: unknown element {item:?}")).into()),
        };
        subset.insert(index);
    }
    universe.check_subset(&subset)?;
    Ok(Some(subset))
}

/// `altiset`, `size` and (for labelled universes) the labels of the altiset.
fn element_result(universe: &Universe, altiset: &ElementSet) -> Value {
    let mut result = json!({ "altiset": altiset, "size": universe.size() });
    if let Some(labels) = universe.labels() {
        result["labels"] = json!(altiset.iter().map(|&i| &labels[i]).collect::<Vec<_>>());
    }
    result
}

pub fn altiset(args: &AltisetArgs) -> Result<Document, CliError> {
    if let Some(path) = &args.relation {
        let input = Input::read(path)?;
        let rel = input.parse(io::parse_relation)?;
        let subset = resolve_subset(args.subset.as_deref(), rel.universe())?;
        let v = rel.altiset(subset.as_ref())?;
        let settings = json!({ "source": "relation", "subset": subset });
        return Ok(Document::new("altiset", &input, settings, element_result(rel.universe(), &v)));
    }

    let (input, system, mut settings) = if let Some(path) = &args.system {
        let input = Input::read(path)?;
        let system = input.parse(io::parse_order_system)?;
        (input, system, json!({ "source": "system" }))
    } else {
        let path = args.csv.as_ref().expect("clap requires one source");
        let specs: Vec<ColumnSpec> = args
            .gain
            .iter()
            .map(|c| ColumnSpec { column: c.clone(), direction: Direction::Gain })
            .chain(args.price.iter().map(|c| ColumnSpec { column: c.clone(), direction: Direction::Price }))
            .collect();
        if specs.is_empty() {
            return Err(CliError::Usage("--csv needs at least one --gain or --price column".into()));
        }
        let input = Input::read(path)?;
        let system = input.parse(|t| io::parse_order_csv(t, &specs, args.label.as_deref()))?;
        let settings = json!({
            "source": "csv",
            "gain": args.gain,
            "price": args.price,
            "label": args.label,
        });
        (input, system, settings)
    };
    let subset = resolve_subset(args.subset.as_deref(), system.universe())?;
    settings["subset"] = json!(subset);
    let result = system_result(&system, subset.as_ref())?;
    Ok(Document::new("altiset", &input, settings, result))
}

fn system_result(system: &OrderSystem<Key>, subset: Option<&ElementSet>) -> Result<Value, CliError> {
    let all = system.universe().all();
    let (sub, map) = system.restrict(subset.unwrap_or(&all))?;
    let q = sub.quotient();
    let v: ElementSet = q.significant_elements().into_iter().map(|i| map[i]).collect();
    let mut result = element_result(system.universe(), &v);
    let classes: Vec<Vec<usize>> = q.classes.iter().map(|c| c.iter().map(|&i| map[i]).collect()).collect();
    result["classes"] = json!(classes);
    result["maximal_classes"] = json!(q.maximal_classes);
    result["class_order"] = json!(q.class_order.pairs());
    Ok(result)
}

pub fn layers(args: &LayersArgs) -> Result<Document, CliError> {
    let input = Input::read(&args.relation)?;
    let rel = input.parse(io::parse_relation)?;
    let term = args
        .chain
        .as_deref()
        .map(|t| t.parse::<ChainTerm>().map_err(|e| CliError::Usage(format!("--chain: {e}"))))
        .transpose()?;
    let dec = upper_layers(&rel)?;
    let mut result = json!({
        "d": dec.class_count,
        "upper_index": dec.upper_index,
        "lower_index": dec.lower_index,
        "upper_layers": sets(&dec.upper_layers()),
        "lower_layers": sets(&dec.lower_layers()),
    });
    if let Some(term) = &term {
        let eval = eval_chain(term, &rel)?;
        let coloring = if term.len() == dec.class_count { Some(chain_coloring(term, &rel)?) } else { None };
        result["chain"] = json!({
            "term": term.to_string(),
            "intermediates": sets(&eval.intermediates),
            "coloring": coloring,
        });
    }
    let settings = json!({ "chain": term.map(|t| t.to_string()) });
    Ok(Document::new("layers", &input, settings, result))
}

pub fn correlate(args: &CorrelateArgs) -> Result<Document, CliError> {
    let input = Input::read(&args.input)?;
    let points = PointSet2D::new(input.parse(io::parse_point_rows)?)?;
    let eps = epsilon(&points)?;
    let result = json!({
        "n": points.len(),
        "iota_plus": increasingness_index(&points)?,
        "iota_minus": decreasingness_index(&points)?,
        "epsilon": eps,
        "blocks": increasing_decomposition(&points)?,
        "decreasing_blocks": decreasing_decomposition(&points)?,
    });
    Ok(Document::new("correlate", &input, json!({}), result))
}

pub fn collective(args: &CollectiveArgs) -> Result<Document, CliError> {
    let input = Input::read(&args.input)?;
    let family = input.parse(io::parse_collective)?;
    let (method, v) = match args.method {
        CollectiveMethod::Quotient => ("quotient", collective_altiset(&family)?),
        CollectiveMethod::Pairwise => ("pairwise", pairwise_elimination(&family)?),
    };
    let names = family.ground().elements();
    let members: Vec<Vec<&String>> =
        v.iter().map(|&k| family.members()[k].iter().map(|&i| &names[i]).collect()).collect();
    let result = json!({ "altiset": v, "members": members, "family_size": family.members().len() });
    Ok(Document::new("collective", &input, json!({ "method": method }), result))
}

fn distance_setting(mode: DistanceMode) -> Value {
    match mode {
        DistanceMode::Exact => json!({ "mode": "exact" }),
        DistanceMode::Tolerance(t) => json!({ "mode": "tolerance", "tolerance": t }),
    }
}

pub fn skyline(args: &SkylineArgs) -> Result<Document, CliError> {
    let input = Input::read(&args.input)?;
    let table = input.parse(io::parse_summits_csv)?;
    let space = match (table.dims, args.left_restricted) {
        (1, false) => Space::RealLine,
        (1, true) => Space::RealLineLeftRestricted,
        (_, false) => Space::Euclidean2d,
        (_, true) => return Err(CliError::Usage("--left-restricted needs x,h input".into())),
    };
    let reference = match (args.reference.as_deref(), args.method) {
        (Some([x]), _) if table.dims == 1 => Point::on_line(*x),
        (Some([x, y]), _) if table.dims == 2 => Point::new(*x, *y),
        (Some(r), _) => {
            return Err(CliError::Usage(format!(
                "--ref has {} coordinate(s) but the summits have {}",
                r.len(),
                table.dims
            )))
        }
        (None, SkylineMethod::Records) => {
            let right = table.points.iter().map(|p| p.x).fold(0.0f64, f64::max);
            Point::new(right, 0.0)
        }
        (None, _) => return Err(CliError::Usage("--ref is required for this method".into())),
    };
    let field = SummitField::new(space, table.points, table.values, reference)?;
    let (method, v) = match args.method {
        SkylineMethod::Oracle => ("oracle", geo_altiset_oracle(&field)),
        SkylineMethod::Circular => ("circular", skyline_circular(&field)),
        SkylineMethod::Contour => ("contour", skyline_contour(&field)),
        SkylineMethod::Recursive => ("recursive", skyline_recursive(&field, args.block_size as usize)?),
        SkylineMethod::Records => ("records", record_events(&field)?),
    };
    let mut settings = json!({
        "method": method,
        "space": space.name(),
        "reference": if table.dims == 1 { json!([reference.x]) } else { json!([reference.x, reference.y]) },
        "distance": distance_setting(field.distances().mode),
    });
    if let SkylineMethod::Recursive = args.method {
        settings["block_size"] = json!(args.block_size);
    }
    let result = json!({ "altiset": v, "size": field.len() });
    Ok(Document::new("skyline", &input, settings, result))
}

pub fn evolve(args: &EvolveArgs) -> Result<Document, CliError> {
    let input = Input::read(&args.input)?;
    let table = input.parse(io::parse_summits_csv)?;
    let (nx, ny) = args.grid.unwrap_or((DEFAULT_RESOLUTION, DEFAULT_RESOLUTION));
    let grid = GridMeasure::around(&table.points, args.inflate, nx, ny)?;
    let measure = VoronoiMeasure::new(&table.points, &grid)?;
    let trace = evolve_with(&measure, &table.values, args.max_steps as usize)?;
    let (min, max) = (grid.min(), grid.max());
    let distance = if measure.is_exact() {
        DistanceMode::Exact
    } else {
        DistanceMode::Tolerance(DISTANCE_TOLERANCE)
    };
    let settings = json!({
        "grid": {
            "min": [min.x, min.y],
            "max": [max.x, max.y],
            "resolution": [nx, ny],
            "cell_area": grid.cell_area(),
        },
        "inflate": args.inflate,
        "max_steps": args.max_steps,
        "distance": distance_setting(distance),
    });
    let result = json!({
        "initial": table.values,
        "potential": trace.potential(),
        "stop_index": trace.stop_index,
    });
    let mut doc = Document::new("evolve", &input, settings, result);
    if let Some(path) = &args.trace {
        doc.side_files.push((
            path.clone(),
            json!({ "stop_index": trace.stop_index, "valuations": trace.valuations }),
        ));
    }
    Ok(doc)
}
