#!/usr/bin/env python3
"""Walkthrough: recover HTML from a raw model reply and rule-check it.

The execution signal is binary: a document that violates any enabled rule
scores -1, a clean one scores +1.
"""

from aesreward import exec_reward, extract_html, lint

RAW_MODEL_OUTPUT = """Sure! Here is the page you asked for:

```html
<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>Tea shop</title>
</head>
<body>
<h1>Loose leaf, good prices</h1>
<IMG src=hero.jpg>
<div id="cta">Order</div>
<div id="cta">Order again</div>
</body>
</html>
```

Let me know if you want a dark theme."""


def main():
    html = extract_html(RAW_MODEL_OUTPUT)
    print("extracted", len(html), "characters of HTML\n")

    report = lint(html)
    print(f"s_exec = {report.s_exec}  (reward {exec_reward(report):+.1f})")
    for violation in report.violations:
        print(f"  {violation.line}:{violation.column}  {violation.rule_id}: {violation.message}")

    fixed = (
        html.replace("<IMG src=hero.jpg>", '<img src="hero.jpg" alt="hero">')
        .replace('<div id="cta">Order again</div>', '<div id="cta-2">Order again</div>')
    )
    print(f"\nafter fixes: s_exec = {lint(fixed).s_exec}")


if __name__ == "__main__":
    main()
