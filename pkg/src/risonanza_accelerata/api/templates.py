"""
Template testuali per lo script di plot e per i riepiloghi della CLI.
"""

from enum import Enum
from typing import Dict, List, Sequence, Tuple

from jinja2 import BaseLoader, Environment

from ..core.models import OracleReport


class OutputTemplate(Enum):
    """Template disponibili"""

    PLOT_SCRIPT = "plot_script"
    VALIDATION_SUMMARY = "validation_summary"


class TemplateManager:
    """Gestore dei template per gli artefatti testuali"""

    def __init__(self):
        self.jinja_env = Environment(loader=BaseLoader(), keep_trailing_newline=True)
        self._load_templates()

    def _load_templates(self):
        """Carica tutti i template"""

        # Script di plot che legge il CSV generato
        self.plot_script_template = '''#!/usr/bin/env python3
"""{{ title }}

Generato da risonanza-accelerata: legge {{ csv_name }} e salva {{ image_name }}.
"""

import matplotlib.pyplot as plt
import pandas as pd

data = pd.read_csv("{{ csv_name }}")

fig, ax = plt.subplots(figsize=(7, 4.5))
{% for column, label, style in series %}
ax.plot(data["{{ x_column }}"], data["{{ column }}"], "{{ style }}", label="{{ label }}")
{% endfor %}
ax.set_xscale("{{ x_scale }}")
ax.set_xlabel("{{ x_label }}")
ax.set_ylabel("{{ y_label }}")
ax.legend()
fig.tight_layout()
fig.savefig("{{ image_name }}", dpi=150)
'''

        # Riepilogo della suite di validazione
        self.validation_summary_template = """
Casi: {{ total }} | superati: {{ passed }} | falliti: {{ failed }}{% if informational %} | informativi: {{ informational }}{% endif %}
{% for group, counts in groups %}
- {{ group }}: {{ counts[0] }}/{{ counts[1] }}
{% endfor %}
{% if failures %}Falliti:
{% for case in failures %}
  * {{ case.case_id }} (errore {{ "%.3g" | format(case.rel_error) }} > {{ "%.3g" | format(case.tolerance) }})
{% endfor %}{% endif %}
""".strip()

        self.templates = {
            OutputTemplate.PLOT_SCRIPT: self.jinja_env.from_string(
                self.plot_script_template
            ),
            OutputTemplate.VALIDATION_SUMMARY: self.jinja_env.from_string(
                self.validation_summary_template
            ),
        }

    def render_plot_script(
        self,
        csv_name: str,
        x_column: str,
        series: Sequence[Tuple[str, str, str]],
        title: str = "Shift di energia di risonanza",
        x_label: str = "a [eV]",
        y_label: str = "δE / λ² [eV]",
        x_scale: str = "log",
        image_name: str = "figure3.png",
    ) -> str:
        """
        Genera lo script di plot.

        Args:
            csv_name: CSV letto dallo script (relativo alla sua directory)
            x_column: Colonna delle ascisse
            series: Terne (colonna, etichetta, stile matplotlib)

        Returns:
            Sorgente dello script
        """
        return self.templates[OutputTemplate.PLOT_SCRIPT].render(
            title=title,
            csv_name=csv_name,
            image_name=image_name,
            x_column=x_column,
            series=list(series),
            x_scale=x_scale,
            x_label=x_label,
            y_label=y_label,
        )

    def render_validation_summary(self, reports: Sequence[OracleReport]) -> str:
        """Riepilogo per gruppo dei report della suite"""
        groups: Dict[str, List[int]] = {}
        for report in reports:
            group = report.case_id.split("/", 1)[0]
            counts = groups.setdefault(group, [0, 0])
            counts[0] += int(report.passed)
            counts[1] += 1

        decisive = [r for r in reports if not r.informational]
        failures = [r for r in decisive if not r.passed]
        return self.templates[OutputTemplate.VALIDATION_SUMMARY].render(
            total=len(reports),
            passed=len(decisive) - len(failures),
            failed=len(failures),
            informational=len(reports) - len(decisive),
            groups=list(groups.items()),
            failures=failures,
        )
