import csv

from mageto.report import run_report


def test_report_writes_tsv_and_figures(tmp_path):
    out = run_report(tmp_path / "rep", stats_bytes=1 << 16, avalanche_bytes=1 << 14,
                     bench_seconds=0.02, attack_seeds=2)
    with open(out / "report.tsv") as fh:
        rows = list(csv.DictReader(fh, delimiter="\t"))
    sections = {r["section"] for r in rows}
    assert sections == {"stats", "avalanche", "attack", "bench"}
    acc = {r["subject"]: float(r["value"]) for r in rows
           if r["section"] == "attack" and r["metric"] == "accuracy"}
    assert acc["broken5"] > 10 * acc["secure"]
    for name in ("entropy0.png", "entropy1.png", "byte_histograms.png",
                 "attack_accuracy.png", "throughput.png"):
        assert (out / name).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
