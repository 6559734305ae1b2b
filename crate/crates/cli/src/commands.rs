use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::time::Duration;

use mdcat_core::federation::{CatalogRecord, Harvester, HttpFetcher, SourcePortal, load_registry};
use mdcat_core::io::{PrefixMap, SerializationFormat, parse, serialize};
use mdcat_core::mapping::{ConversionIssue, convert_record, load_mapping_table, records_from_csv, records_from_json};
use mdcat_core::profile::{Profile, SchemeMode, base_fragment, check_extension, compile_layered, load_profile, minimum_profile};
use mdcat_core::rdf::Graph;
use mdcat_core::shacl::{Severity, ShapeSet, ValidationReport, mobility_shapes, validate_with};
use mdcat_core::vocab::{Vocabularies, load_bundled_vocabularies, tabular_to_scheme};
use serde_json::{Value, json};

use crate::{Cli, Command, CommandOutcome, EXIT_ERROR, EXIT_FINDINGS, EXIT_OK, ProfileCommand, VocabCommand};

/// An operational failure, reported with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<CommandOutcome, Failure>;

pub fn run(cli: &Cli, stdin: &mut dyn Read, color: bool) -> CommandOutcome {
    let ctx = Context {
        json: cli.json,
        strict: cli.strict,
        color,
    };
    let result = match &cli.command {
        Command::Validate { file, profile, format } => ctx.validate(file, profile.as_deref(), format.as_deref(), stdin),
        Command::Convert {
            legacy,
            mapping,
            out,
            id_column,
            to,
        } => ctx.convert(legacy, mapping, out.as_deref(), id_column, to),
        Command::Vocab {
            command: VocabCommand::Build { csv, out, to },
        } => ctx.vocab_build(csv, out.as_deref(), to),
        Command::Profile {
            command: ProfileCommand::CheckExtension { base, extension },
        } => ctx.check_extension(base, extension),
        Command::Harvest {
            sources,
            out,
            timeout_secs,
        } => ctx.harvest(sources, out.as_deref(), Duration::from_secs(*timeout_secs)),
        Command::Serve { config } => serve(config.as_deref()),
        Command::Serialize { file, to, format } => ctx.serialize(file, to, format.as_deref(), stdin),
    };
    result.unwrap_or_else(|Failure(message)| CommandOutcome::error(message))
}

struct Context {
    json: bool,
    strict: bool,
    color: bool,
}

fn format_named(name: &str) -> Result<SerializationFormat, Failure> {
    SerializationFormat::from_extension(name)
        .or_else(|| SerializationFormat::from_media_type(name).ok())
        .ok_or_else(|| Failure(format!("unknown RDF format '{name}'")))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Reads `file` (or stdin for `-`) and settles its format.
fn read_rdf(file: &Path, format: Option<&str>, stdin: &mut dyn Read) -> Result<(String, SerializationFormat), Failure> {
    let format = match format {
        Some(name) => format_named(name)?,
        None if file == Path::new("-") => return Err(Failure("--format is required when reading stdin".into())),
        None => file
            .extension()
            .and_then(|e| e.to_str())
            .and_then(SerializationFormat::from_extension)
            .ok_or_else(|| Failure(format!("{}: cannot tell the format; pass --format", file.display())))?,
    };
    let text = if file == Path::new("-") {
        let mut text = String::new();
        stdin.read_to_string(&mut text).map_err(|e| Failure(format!("stdin: {e}")))?;
        text
    } else {
        read_file(file)?
    };
    Ok((text, format))
}

/// `builtin:dcat-ap`, `builtin:mobilitydcat-ap` or a profile document.
fn named_profile(name: &str) -> Result<Profile, Failure> {
    match name {
        "builtin:dcat-ap" => Ok(base_fragment().clone()),
        "builtin:mobilitydcat-ap" => Ok(minimum_profile().clone()),
        path => load_profile(&read_file(Path::new(path))?).map_err(|e| Failure(format!("{path}: {e}"))),
    }
}

fn vocabularies() -> Result<Vocabularies, Failure> {
    Ok(load_bundled_vocabularies()?)
}

fn count(report: &ValidationReport, severity: Severity) -> usize {
    report.results.iter().filter(|r| r.severity == severity).count()
}

impl Context {
    fn exit_code(&self, violations: usize, warnings: usize) -> u8 {
        if violations > 0 || (self.strict && warnings > 0) { EXIT_FINDINGS } else { EXIT_OK }
    }

    fn paint(&self, severity: Severity) -> String {
        let code = match severity {
            Severity::Violation => "31",
            Severity::Warning => "33",
            Severity::Info => "36",
        };
        if self.color { format!("\x1b[{code}m{severity}\x1b[0m") } else { severity.to_string() }
    }

    fn report_lines(&self, out: &mut String, report: &ValidationReport) {
        for r in &report.results {
            let path = r.path.as_ref().map_or(String::new(), |p| format!(" <{p}>"));
            writeln!(out, "{} {}{path}: {}", self.paint(r.severity), r.focus_node, r.message).unwrap();
        }
    }

    fn json_outcome(&self, value: &Value, exit_code: u8) -> CommandOutcome {
        CommandOutcome {
            exit_code,
            stdout: format!("{}\n", serde_json::to_string_pretty(value).expect("JSON values serialize")),
            stderr: String::new(),
        }
    }

    fn validate(&self, file: &Path, profile: Option<&str>, format: Option<&str>, stdin: &mut dyn Read) -> Outcome {
        let shapes = match profile {
            None => mobility_shapes(),
            Some(name) => {
                let profile = named_profile(name)?;
                let lowered = check_extension(base_fragment(), &profile)?;
                if let Some(v) = lowered.first() {
                    return Err(Failure(format!("{name} does not extend DCAT-AP: {}", v.detail)));
                }
                compile_layered(&[base_fragment(), &profile], SchemeMode::Native)
            }
        };
        let (text, format) = read_rdf(file, format, stdin)?;
        let (graph, _) = parse(&text, format, None).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
        let report = validate_with(&graph, &shapes, &vocabularies()?);
        let (violations, warnings) = (count(&report, Severity::Violation), count(&report, Severity::Warning));
        let exit_code = self.exit_code(violations, warnings);
        if self.json {
            return Ok(self.json_outcome(&serde_json::to_value(&report)?, exit_code));
        }
        let mut out = String::new();
        let verdict = if report.conforms { "conforms" } else { "does not conform" };
        writeln!(out, "{}: {verdict} ({violations} violations, {warnings} warnings)", file.display()).unwrap();
        self.report_lines(&mut out, &report);
        Ok(CommandOutcome {
            exit_code,
            stdout: out,
            stderr: String::new(),
        })
    }

    fn convert(&self, legacy: &Path, mapping: &Path, out: Option<&Path>, id_column: &str, to: &str) -> Outcome {
        let to = format_named(to)?;
        let table = load_mapping_table(&read_file(mapping)?).map_err(|e| Failure(format!("{}: {e}", mapping.display())))?;
        let text = read_file(legacy)?;
        let records = match legacy.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("csv") => records_from_csv(&text, id_column),
            Some("json") => records_from_json(&text),
            _ => return Err(Failure(format!("{}: legacy records must be .csv or .json", legacy.display()))),
        }
        .map_err(|e| Failure(format!("{}: {e}", legacy.display())))?;
        let mut graph = Graph::new();
        let mut issues: Vec<ConversionIssue> = Vec::new();
        for record in &records {
            let (g, found) = convert_record(record, &table, minimum_profile());
            graph.extend_from(&g);
            issues.extend(found);
        }
        let report = validate_with(&graph, &mobility_shapes(), &vocabularies()?);
        let violations = count(&report, Severity::Violation);
        let warnings = count(&report, Severity::Warning) + issues.len();
        let exit_code = self.exit_code(violations, warnings);
        let rdf = serialize(&graph, to, &PrefixMap::common());
        if let Some(path) = out {
            write_file(path, &rdf)?;
        }
        if self.json {
            let mut value = json!({
                "records": records.len(),
                "triples": graph.len(),
                "issues": issues,
                "validation": report,
            });
            if out.is_none() {
                value["output"] = Value::String(rdf);
            }
            return Ok(self.json_outcome(&value, exit_code));
        }
        let mut diagnostics = String::new();
        writeln!(diagnostics, "{} records, {} triples, {} issues, {violations} violations", records.len(), graph.len(), issues.len()).unwrap();
        for issue in &issues {
            writeln!(diagnostics, "{} {}: {:?} {}", issue.record_id, issue.field_name, issue.kind, issue.detail).unwrap();
        }
        self.report_lines(&mut diagnostics, &report);
        Ok(CommandOutcome {
            exit_code,
            stdout: if out.is_none() { rdf } else { String::new() },
            stderr: diagnostics,
        })
    }

    fn vocab_build(&self, csv: &Path, out: Option<&Path>, to: &str) -> Outcome {
        let to = format_named(to)?;
        let (scheme, graph) = tabular_to_scheme(&read_file(csv)?).map_err(|e| Failure(format!("{}: {e}", csv.display())))?;
        let rdf = serialize(&graph, to, &PrefixMap::common());
        if let Some(path) = out {
            write_file(path, &rdf)?;
        }
        if self.json {
            let mut value = json!({
                "scheme": scheme.iri,
                "title": scheme.title,
                "version": scheme.version.to_string(),
                "concepts": scheme.len(),
                "triples": graph.len(),
            });
            if out.is_none() {
                value["output"] = Value::String(rdf);
            }
            return Ok(self.json_outcome(&value, EXIT_OK));
        }
        Ok(CommandOutcome {
            exit_code: EXIT_OK,
            stdout: if out.is_none() { rdf } else { String::new() },
            stderr: format!("{}: {} concepts\n", scheme.iri, scheme.len()),
        })
    }

    fn check_extension(&self, base: &str, extension: &str) -> Outcome {
        let violations = check_extension(&named_profile(base)?, &named_profile(extension)?)?;
        let exit_code = if violations.is_empty() { EXIT_OK } else { EXIT_FINDINGS };
        if self.json {
            return Ok(self.json_outcome(&json!({ "extends": violations.is_empty(), "violations": violations }), exit_code));
        }
        let mut out = String::new();
        if violations.is_empty() {
            writeln!(out, "{extension} extends {base}").unwrap();
        }
        for v in &violations {
            let rules: Vec<String> = v.rules.iter().map(|r| format!("{r:?}")).collect();
            writeln!(out, "{} <{}> <{}>: {} ({})", self.paint(Severity::Violation), v.class_iri, v.property_iri, v.detail, rules.join(", ")).unwrap();
        }
        Ok(CommandOutcome {
            exit_code,
            stdout: out,
            stderr: String::new(),
        })
    }

    fn harvest(&self, registry: &Path, out: Option<&Path>, timeout: Duration) -> Outcome {
        let sources = load_registry(&read_file(registry)?).map_err(|e| Failure(format!("{}: {e}", registry.display())))?;
        let shapes = mobility_shapes();
        let vocab = vocabularies()?;
        let fetcher = HttpFetcher::new(timeout);
        let now = chrono::Utc::now();
        let results = harvest_all(&sources, &shapes, &vocab, &fetcher, now);
        let mut updated = Vec::new();
        let mut summaries = Vec::new();
        let mut failures = 0;
        let mut violations = 0;
        let mut warnings = 0;
        for (source, result) in sources.iter().zip(results) {
            match result {
                Ok((records, next)) => {
                    let v: usize = records.iter().map(|r| count(&r.validation, Severity::Violation)).sum();
                    let w: usize = records.iter().map(|r| count(&r.validation, Severity::Warning)).sum();
                    (violations, warnings) = (violations + v, warnings + w);
                    if let (Some(dir), false) = (out, records.is_empty()) {
                        let mut graph = Graph::new();
                        records.iter().for_each(|r| graph.extend_from(&r.graph));
                        write_file(&dir.join(format!("{}.ttl", source.id)), &serialize(&graph, SerializationFormat::Turtle, &PrefixMap::common()))?;
                    }
                    summaries.push(json!({
                        "source": source.id,
                        "datasets": records.len(),
                        "nonConforming": records.iter().filter(|r| !r.validation.conforms).count(),
                        "violations": v,
                        "unchanged": records.is_empty() && next.last_etag.is_some() && next == *source,
                    }));
                    updated.push(next);
                }
                Err(e) => {
                    failures += 1;
                    summaries.push(json!({ "source": source.id, "error": e }));
                    updated.push(source.clone());
                }
            }
        }
        if let Some(dir) = out {
            write_file(&dir.join("sources.json"), &format!("{}\n", serde_json::to_string_pretty(&updated)?))?;
        }
        let exit_code = if failures > 0 { EXIT_ERROR } else { self.exit_code(violations, warnings) };
        if self.json {
            return Ok(self.json_outcome(&json!({ "sources": summaries }), exit_code));
        }
        let mut text = String::new();
        for s in &summaries {
            match s.get("error") {
                Some(e) => writeln!(text, "{}: failed: {}", s["source"].as_str().unwrap_or(""), e.as_str().unwrap_or("")).unwrap(),
                None => writeln!(text, "{}: {} datasets, {} not conforming", s["source"].as_str().unwrap_or(""), s["datasets"], s["nonConforming"]).unwrap(),
            }
        }
        Ok(CommandOutcome {
            exit_code,
            stdout: text,
            stderr: String::new(),
        })
    }

    fn serialize(&self, file: &Path, to: &str, format: Option<&str>, stdin: &mut dyn Read) -> Outcome {
        let to = format_named(to)?;
        let (text, format) = read_rdf(file, format, stdin)?;
        let (graph, prefixes) = parse(&text, format, None).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
        let mut merged = PrefixMap::common();
        for (label, ns) in prefixes.iter() {
            let _ = merged.insert(label, ns.clone());
        }
        let rdf = serialize(&graph, to, &merged);
        if self.json {
            return Ok(self.json_outcome(&json!({ "triples": graph.len(), "format": to.media_type(), "output": rdf }), EXIT_OK));
        }
        Ok(CommandOutcome {
            exit_code: EXIT_OK,
            stdout: rdf,
            stderr: String::new(),
        })
    }
}

type HarvestResult = Result<(Vec<CatalogRecord>, SourcePortal), String>;

/// One thread per source.
fn harvest_all(
    sources: &[SourcePortal],
    shapes: &ShapeSet,
    concepts: &Vocabularies,
    fetcher: &HttpFetcher,
    now: chrono::DateTime<chrono::Utc>,
) -> Vec<HarvestResult> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = sources
            .iter()
            .map(|source| {
                scope.spawn(move || {
                    let harvester = Harvester { shapes, concepts };
                    harvester.harvest(source, fetcher, now).map_err(|e| e.to_string())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("harvest thread panicked".into()))).collect()
    })
}

fn serve(config: Option<&Path>) -> Outcome {
    let config = match config {
        Some(path) => mdcat_service::ServiceConfig::load(path)?,
        None => mdcat_service::ServiceConfig::default(),
    };
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(mdcat_service::serve(&config))?;
    Ok(CommandOutcome {
        exit_code: EXIT_OK,
        stdout: String::new(),
        stderr: String::new(),
    })
}

