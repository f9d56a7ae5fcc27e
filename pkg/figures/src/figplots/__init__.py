"""CSV-to-figure rendering for the cavity simulator outputs."""

__version__ = "0.1.0"

from .csvio import CsvFormatError, TimeSeries, read_timeseries
from .render import FigureSpec, render
