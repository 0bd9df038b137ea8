"""
This module provides the PowerPoint export of orbital_tools reports using the module python-pptx:
eligibility tables with colored marker cells and record tables (cross checks, power tables).
@author: orbital-measure-tools developers
"""
import os
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import pptx
from pptx.dml.color import RGBColor
from pptx.presentation import Presentation
from pptx.shapes.graphfrm import GraphicFrame
from pptx.slide import Slide, SlideLayout
from pptx.table import Table, _Cell
from pptx.util import Inches, Pt

from orbital_tools.enumerations import Marker
from orbital_tools.utils import _DO_NOT_CHANGE

MARKER_COLORS: Dict[Marker, Tuple[int, int, int]] = {
    Marker.check: (198, 239, 206),
    Marker.cross: (255, 199, 206),
    Marker.S1: (255, 235, 156),
    Marker.S2: (255, 235, 156),
    Marker.S3: (255, 235, 156),
    Marker.S4: (255, 235, 156),
}


class MarkerCellStyle:
    """Solid fill and font size of a table cell."""

    def __init__(self, fill_rgb: Optional[Tuple[int, int, int]] = None, font_size: Optional[float] = None):
        self.fill_rgb: Optional[Tuple[int, int, int]] = fill_rgb
        self.font_size: Optional[float] = font_size  # in [Pt]

    def set(self, fill_rgb: Optional[Tuple[int, int, int]] = _DO_NOT_CHANGE,
            font_size: Optional[float] = _DO_NOT_CHANGE) -> 'MarkerCellStyle':
        if fill_rgb is not _DO_NOT_CHANGE:
            self.fill_rgb = fill_rgb
        if font_size is not _DO_NOT_CHANGE:
            self.font_size = font_size
        return self

    def write_cell(self, cell: _Cell) -> None:
        if self.fill_rgb is not None:
            cell.fill.solid()
            cell.fill.fore_color.rgb = RGBColor(*self.fill_rgb)
        if self.font_size is not None:
            for paragraph in cell.text_frame.paragraphs:
                for run in paragraph.runs:
                    run.font.size = Pt(self.font_size)


class PPTXReport:
    """
    A presentation collecting orbital_tools results:
        - one title slide, then one slide per table
        - marker cells filled green (check), red (cross) and yellow (reduction cases)
        - removes unused placeholders from added slides
    """

    # noinspection PyTypeChecker
    def __init__(self, title: str = "orbital measure report", subtitle: str = ""):
        self.prs: Presentation = pptx.Presentation()
        self.title_layout: SlideLayout = self.prs.slide_masters[0].slide_layouts[0]
        self.default_layout: SlideLayout = self.prs.slide_masters[0].slide_layouts[5]  # title only
        self.font_size: float = 9
        self.add_title_slide(title, subtitle)

    def _fraction_width_to_inch(self, fraction: float) -> Inches:
        """Width in inches as a fraction of total slide-width."""
        return Inches(self.prs.slide_width.inches * fraction)

    def _fraction_height_to_inch(self, fraction: float) -> Inches:
        return Inches(self.prs.slide_height.inches * fraction)

    def add_title_slide(self, title: str, subtitle: str = "") -> Slide:
        slide = self.prs.slides.add_slide(self.title_layout)
        slide.shapes.title.text = title
        if subtitle and len(slide.placeholders) > 1:
            slide.placeholders[1].text = subtitle
        self.remove_unpopulated_shapes(slide)
        return slide

    def add_slide(self, title: str) -> Slide:
        slide = self.prs.slides.add_slide(self.default_layout)
        slide.shapes.title.text = title
        self.remove_unpopulated_shapes(slide)
        return slide

    @staticmethod
    def _get_rows_cols(table_data: Sequence[Sequence]) -> Tuple[int, int]:
        return len(table_data), max((len(row) for row in table_data), default=0)

    def add_table(self, slide: Slide, table_data: Sequence[Sequence], width_fraction: float = 0.96) -> GraphicFrame:
        """
        Add a table shape below the slide title; table_data: outer sequence -> rows, inner -> cols.
        Entries are written as text=f"{entry}".
        """
        rows, cols = self._get_rows_cols(table_data)
        if rows == 0 or cols == 0:
            raise ValueError("Cannot add an empty table.")
        left, top = self._fraction_width_to_inch(0.02), self._fraction_height_to_inch(0.2)
        row_height = min(0.4, 5.5 / rows)
        result = slide.shapes.add_table(rows, cols, left, top, width=self._fraction_width_to_inch(width_fraction),
                                        height=Inches(row_height * rows))
        table = result.table
        for ir, row in enumerate(table_data):
            for ic, entry in enumerate(row):
                table.cell(ir, ic).text = "" if entry is None else f"{entry}"
        text_style = MarkerCellStyle(font_size=self.font_size)
        for cell in iter_table_cells(table):
            text_style.write_cell(cell)
        return result

    def add_marker_table(self, document, title: Optional[str] = None) -> Table:
        """Eligibility table: header row of labels, row label in the last column, colored marker cells."""
        labels = document.labels
        title = title or f"Eligibility p={document.p} ({document.space.value})"
        table_data: List[List[str]] = [labels + [""]]
        for label, row in zip(labels, document.cells):
            table_data.append([cell.symbol if cell else "" for cell in row] + [label])
        table = self.add_table(self.add_slide(title), table_data).table
        table.first_row = True

        for ir, row in enumerate(document.cells, start=1):
            for ic, marker in enumerate(row):
                if marker is not None:
                    MarkerCellStyle(MARKER_COLORS[marker]).write_cell(table.cell(ir, ic))
        return table

    def add_records(self, rows: Sequence[Dict], title: str, fields: Optional[Sequence[str]] = None,
                    rows_per_slide: int = 14) -> List[Table]:
        """Records as tables with a header row, split over as many slides as needed."""
        fields = list(fields) if fields is not None else (list(rows[0].keys()) if rows else [])
        if not fields:
            raise ValueError("Cannot add records without fields.")
        result = []
        chunks = [rows[start:start + rows_per_slide] for start in range(0, len(rows), rows_per_slide)] or [[]]
        for index, chunk in enumerate(chunks):
            slide_title = title if len(chunks) == 1 else f"{title} ({index + 1}/{len(chunks)})"
            data = [fields] + [[row.get(field) for field in fields] for row in chunk]
            table = self.add_table(self.add_slide(slide_title), data).table
            for ir, row in enumerate(chunk, start=1):
                if row.get("agree") is False:
                    for ic in range(len(fields)):
                        MarkerCellStyle(MARKER_COLORS[Marker.cross]).write_cell(table.cell(ir, ic))
            result.append(table)
        return result

    @staticmethod
    def remove_unpopulated_shapes(slide: Slide):
        """Removes empty placeholders (e.g. due to layout) from slide."""
        for index in reversed(range(len(slide.shapes))):
            shape = slide.shapes[index]
            if shape.has_text_frame and shape.text_frame.text == "":
                shape.element.getparent().remove(shape.element)

    def save(self, filename: Union[str, os.PathLike], overwrite: bool = False) -> bool:
        """Save presentation under the given filename. Returns False if an existing file was kept."""
        filename = str(filename)  # python-pptx can not handle Path objects
        if os.path.isfile(filename) and not overwrite:
            print(f"File {filename} already exists. Set overwrite=True, if you want to overwrite file.")
            return False
        self.prs.save(filename)
        return True


def iter_table_cells(table: Table) -> Iterable[_Cell]:
    for row in table.rows:
        for cell in row.cells:
            yield cell
