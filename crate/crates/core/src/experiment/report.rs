//! CSV reports. Each file starts with a versioned `#` comment line, then a
//! header row. Files are written to a temporary sibling and renamed.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use super::{CountReport, CoverRow, SectionReport, SAMPLER_ID};
use crate::section::Genus;

fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

fn csv_file(dir: &Path, name: &str, comments: &[String], header: &[&str], rows: Vec<Vec<String>>) -> io::Result<PathBuf> {
    let mut buf = Vec::new();
    for c in comments {
        buf.extend_from_slice(format!("# {c}\n").as_bytes());
    }
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for r in rows {
            w.write_record(&r)?;
        }
        w.flush()?;
    }
    let path = dir.join(name);
    write_atomic(&path, &buf)?;
    Ok(path)
}

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn coords<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn write_counts(r: &CountReport, dir: &Path) -> io::Result<PathBuf> {
    let rows = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.bound.to_string(),
                row.n_x.to_string(),
                row.n_x_prime.to_string(),
                row.lines.to_string(),
                row.max_ratio.map_or("NA".into(), f6),
                f6(row.ref_four_thirds),
                f6(row.ref_dimension_growth),
            ]
        })
        .collect();
    csv_file(
        dir,
        "counts.csv",
        &[
            "planesect-counts v1".into(),
            format!("surface={} hash={}", r.surface, r.surface_hash),
            format!("cover_failures={}", r.cover_failures),
        ],
        &["B", "N_X", "N_X_prime", "lines", "max_cover_ratio", "B^(4/3)", "B^(3/sqrt(d))*ln(B)^4+B"],
        rows,
    )
}

pub fn write_exponent(r: &CountReport, dir: &Path) -> io::Result<PathBuf> {
    let mut rows = Vec::new();
    match &r.fit {
        Ok(fit) => {
            rows.push(vec!["status".into(), "ok".into()]);
            rows.push(vec!["slope".into(), format!("{:.9}", fit.slope)]);
            rows.push(vec!["intercept".into(), format!("{:.9}", fit.intercept)]);
            rows.push(vec!["tail_rows".into(), fit.residuals.len().to_string()]);
            for (b, res) in &fit.residuals {
                rows.push(vec![format!("residual_B={b}"), format!("{res:.9}")]);
            }
        }
        Err(msg) => {
            rows.push(vec!["status".into(), "insufficient_data".into()]);
            rows.push(vec!["detail".into(), msg.clone()]);
        }
    }
    csv_file(
        dir,
        "exponent.csv",
        &[
            "planesect-exponent v1".into(),
            format!("surface={} hash={} tail_fraction={}", r.surface, r.surface_hash, r.tail_fraction),
            "least-squares slope of ln N_X' against ln B; descriptive only".into(),
        ],
        &["key", "value"],
        rows,
    )
}

/// One line of the genus histogram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistogramRow {
    pub class: &'static str,
    pub genus: String,
    pub components: u64,
    pub planes: u64,
    /// Point incidences attributed to components of this class.
    pub points: u64,
}

pub fn histogram(r: &SectionReport) -> Vec<HistogramRow> {
    let mut m: BTreeMap<(&'static str, String), (u64, u64, u64)> = BTreeMap::new();
    for rec in &r.records {
        let mut seen = std::collections::BTreeSet::new();
        for (k, c) in rec.profile.components.iter().enumerate() {
            let key = (c.classification.label(), c.genus.to_string());
            let e = m.entry(key.clone()).or_default();
            e.0 += 1;
            e.2 += rec.counts.per_component[k] as u64;
            if seen.insert(key) {
                e.1 += 1;
            }
        }
    }
    m.into_iter()
        .map(|((class, genus), (components, planes, points))| HistogramRow { class, genus, components, planes, points })
        .collect()
}

pub fn write_sections(r: &SectionReport, dir: &Path) -> io::Result<(PathBuf, PathBuf)> {
    let mut rows = Vec::new();
    for rec in &r.records {
        let normal = coords(rec.profile.plane.normal());
        for (k, c) in rec.profile.components.iter().enumerate() {
            let sing: Vec<String> = c.singular_summary.iter().map(ToString::to_string).collect();
            rows.push(vec![
                normal.clone(),
                rec.source.label().into(),
                rec.counts.total.to_string(),
                k.to_string(),
                c.form.to_string(),
                c.degree.to_string(),
                c.multiplicity.to_string(),
                match c.genus {
                    Genus::Value(g) => g.to_string(),
                    Genus::Unresolved => "U".into(),
                },
                c.classification.label().into(),
                rec.counts.per_component[k].to_string(),
                sing.join("; "),
            ]);
        }
    }
    let comments = [
        "planesect-sections v1".to_string(),
        format!("surface={} hash={}", r.surface, r.surface_hash),
        format!("plane_height_le={} sample={} seed={} sampler={SAMPLER_ID}", r.plane_height, r.sample_size, r.seed),
    ];
    let a = csv_file(
        dir,
        "sections.csv",
        &comments,
        &[
            "plane",
            "source",
            "plane_points",
            "component",
            "form",
            "degree",
            "multiplicity",
            "genus",
            "class",
            "component_points",
            "singular_points",
        ],
        rows,
    )?;
    let hist = histogram(r)
        .into_iter()
        .map(|h| vec![h.class.into(), h.genus, h.components.to_string(), h.planes.to_string(), h.points.to_string()])
        .collect();
    let mut hc = comments.to_vec();
    hc[0] = "planesect-sections-histogram v1".into();
    let b = csv_file(dir, "sections_histogram.csv", &hc, &["class", "genus", "components", "planes", "points"], hist)?;
    Ok((a, b))
}

pub fn write_cover(rows: &[CoverRow], seed: u64, dir: &Path) -> io::Result<PathBuf> {
    let out = rows
        .iter()
        .map(|r| {
            vec![
                r.scope.clone(),
                r.points.to_string(),
                r.failures.to_string(),
                f6(r.max_ratio),
                r.worst.map_or("NA".into(), |w| coords(&w)),
            ]
        })
        .collect();
    csv_file(
        dir,
        "cover.csv",
        &[
            "planesect-cover v1".into(),
            format!("covering constant {} seed={seed}", crate::lattice::COVERING_CONSTANT),
        ],
        &["scope", "points", "failures", "max_ratio", "worst_point"],
        out,
    )
}
