"""
This script demonstrates how to build eligibility tables, cross check them against the rank certifier and
export the results with orbital_tools.
@author: orbital-measure-tools developers
"""
import os

from orbital_tools.enumerations import ReportFormat, Space
from orbital_tools.pptx_report import PPTXReport
from orbital_tools.settings import settings_default
from orbital_tools.tables import cross_check, eligibility_table
from orbital_tools.writers import PAIR_FIELDS, pair_rows


def run(save_dir: str):
    # the p=5 table of SO_0(5,5): rows and columns are the u=0 configurations, cells are √, X or S_n
    table_5 = eligibility_table(5, Space.RealD)
    with open(os.path.join(save_dir, "eligibility_p5.md"), "w", encoding="utf-8") as file:
        file.write(table_5.render(ReportFormat.Markdown))

    # the same table as CSV can be read back
    csv_text = table_5.render(ReportFormat.CSV)
    assert table_5.from_csv(csv_text) == table_5

    # for a small p the criterion can be cross checked against the rank certifier
    settings = settings_default().set(seed=42)
    reports, status = cross_check(3, Space.RealD, settings.trials, settings.seed)
    print(f"p=3: {len(reports)} pairs, exit status {status}")

    pp = PPTXReport("Eligibility example 01", "SO_0(p,p)")
    pp.add_marker_table(table_5)
    pp.add_marker_table(eligibility_table(4, Space.RealD))
    pp.add_marker_table(eligibility_table(4, Space.ComplexC))
    pp.add_records(pair_rows(reports), "Cross check p=3", PAIR_FIELDS)
    pp.save(os.path.join(save_dir, "eligibility_table_example_01.pptx"), overwrite=True)
    return status


if __name__ == '__main__':
    save_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'output')
    if not os.path.exists(save_dir):
        os.makedirs(save_dir)
    run(save_dir)
