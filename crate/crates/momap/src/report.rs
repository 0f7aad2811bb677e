//! Structured command reports: a flat section/line model that renders
//! identically (byte for byte) for identical inputs, as plain text or
//! JSON, with timing isolated in a single optional field.

use serde_json::Value;

/// Overall outcome of a command, mapped onto the exit-code contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Everything checked out; exit 0.
    Pass,
    /// Input failed parsing or validation; exit 2.
    Invalid,
    /// A mathematically meaningful negative: an obstruction, a failed
    /// verification, a nonzero class; exit 3.
    Obstructed,
    /// The question is open within the configured degree cap; exit 4.
    Undecided,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Invalid => "invalid",
            Verdict::Obstructed => "obstructed",
            Verdict::Undecided => "undecided within degree cap",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Invalid => 2,
            Verdict::Obstructed => 3,
            Verdict::Undecided => 4,
        }
    }
}

/// One labelled line, optionally carrying a pass/fail marker.
#[derive(Clone, Debug)]
pub struct Line {
    pub label: String,
    pub value: String,
    pub ok: Option<bool>,
}

/// A titled group of lines.
#[derive(Clone, Debug)]
pub struct Section {
    pub title: String,
    pub lines: Vec<Line>,
}

/// A complete command report.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub scene_digest: String,
    pub verdict: Verdict,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: impl Into<String>, scene_digest: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            scene_digest: scene_digest.into(),
            verdict: Verdict::Pass,
            sections: Vec::new(),
        }
    }

    /// Starts a new section and returns the report for chaining.
    pub fn section(&mut self, title: impl Into<String>) -> &mut Self {
        self.sections.push(Section {
            title: title.into(),
            lines: Vec::new(),
        });
        self
    }

    /// Appends a plain line to the current section.
    pub fn line(&mut self, label: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.push_line(label, value, None)
    }

    /// Appends a line with a pass/fail marker; a failed line does not
    /// change the verdict by itself.
    pub fn check(
        &mut self,
        label: impl Into<String>,
        value: impl Into<String>,
        ok: bool,
    ) -> &mut Self {
        self.push_line(label, value, Some(ok))
    }

    fn push_line(
        &mut self,
        label: impl Into<String>,
        value: impl Into<String>,
        ok: Option<bool>,
    ) -> &mut Self {
        if self.sections.is_empty() {
            self.section("summary");
        }
        self.sections
            .last_mut()
            .expect("a section exists")
            .lines
            .push(Line {
                label: label.into(),
                value: value.into(),
                ok,
            });
        self
    }

    /// Whether every marked line passed.
    pub fn all_checks_pass(&self) -> bool {
        self.sections
            .iter()
            .flat_map(|s| &s.lines)
            .all(|l| l.ok != Some(false))
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    /// Plain-text rendering; `elapsed_ms` is the only line that may
    /// differ between identical runs, and `None` omits it.
    pub fn render_text(&self, elapsed_ms: Option<u128>) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "momap {} (v{})\n",
            self.command,
            env!("CARGO_PKG_VERSION")
        ));
        if !self.scene_digest.is_empty() {
            out.push_str(&format!("scene digest: {}\n", self.scene_digest));
        }
        for section in &self.sections {
            out.push_str(&format!("\n== {} ==\n", section.title));
            for line in &section.lines {
                let marker = match line.ok {
                    Some(true) => "  [ok]",
                    Some(false) => "  [FAIL]",
                    None => "",
                };
                if line.value.is_empty() {
                    out.push_str(&format!("  {}{}\n", line.label, marker));
                } else {
                    out.push_str(&format!("  {}: {}{}\n", line.label, line.value, marker));
                }
            }
        }
        out.push_str(&format!("\nverdict: {}\n", self.verdict.label()));
        if let Some(ms) = elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out
    }

    /// JSON rendering with the same content and ordering.
    pub fn render_json(&self, elapsed_ms: Option<u128>) -> Value {
        let sections: Vec<Value> = self
            .sections
            .iter()
            .map(|s| {
                let lines: Vec<Value> = s
                    .lines
                    .iter()
                    .map(|l| {
                        let mut obj = serde_json::Map::new();
                        obj.insert("label".into(), Value::String(l.label.clone()));
                        obj.insert("value".into(), Value::String(l.value.clone()));
                        if let Some(ok) = l.ok {
                            obj.insert("ok".into(), Value::Bool(ok));
                        }
                        Value::Object(obj)
                    })
                    .collect();
                serde_json::json!({ "title": s.title, "lines": lines })
            })
            .collect();
        let mut root = serde_json::Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        root.insert("version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
        root.insert(
            "scene_digest".into(),
            Value::String(self.scene_digest.clone()),
        );
        root.insert("verdict".into(), Value::String(self.verdict.label().into()));
        root.insert("exit_code".into(), Value::from(self.exit_code()));
        root.insert("sections".into(), Value::Array(sections));
        if let Some(ms) = elapsed_ms {
            root.insert("elapsed_ms".into(), Value::from(ms as u64));
        }
        Value::Object(root)
    }
}
