//! Artifact writers: schema-versioned JSON, RFC 4180 CSV and plot series.

use serde::Serialize;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
struct Envelope<'a, P: Serialize, R: Serialize> {
    schema: u32,
    command: &'a str,
    parameters: &'a P,
    expression: &'a lfd_core::expr::ExpressionFile,
    result: &'a R,
}

pub struct Sink {
    dir: PathBuf,
    plot: bool,
    written: Vec<PathBuf>,
}

impl Sink {
    pub fn new(dir: &Path, plot: bool) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Sink { dir: dir.to_path_buf(), plot, written: Vec::new() })
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    fn put(&mut self, name: &str, bytes: &[u8]) -> std::io::Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, bytes)?;
        self.written.push(path);
        Ok(())
    }

    pub fn json<P: Serialize, R: Serialize>(
        &mut self,
        command: &str,
        parameters: &P,
        expression: &lfd_core::expr::ExpressionFile,
        result: &R,
    ) -> std::io::Result<()> {
        let env = Envelope { schema: SCHEMA, command, parameters, expression, result };
        let mut text = serde_json::to_string_pretty(&env).map_err(std::io::Error::other)?;
        text.push('\n');
        self.put(&format!("{command}.json"), text.as_bytes())
    }

    pub fn csv<T: Serialize>(&mut self, name: &str, rows: &[T]) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        for r in rows {
            w.serialize(r).map_err(std::io::Error::other)?;
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        self.put(&format!("{name}.csv"), &bytes)
    }

    /// `name.dat` with a `# x y` header, when plot data was requested.
    pub fn series(&mut self, name: &str, labels: (&str, &str), points: &[(f64, f64)]) -> std::io::Result<()> {
        if !self.plot {
            return Ok(());
        }
        let mut text = format!("# {} {}\n", labels.0, labels.1);
        for (x, y) in points {
            let _ = writeln!(text, "{x} {y}");
        }
        self.put(&format!("{name}.dat"), text.as_bytes())
    }
}
