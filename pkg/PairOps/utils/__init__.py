from .time_format import get_readable_time
from .formatting import flatten, property_table, submodule_summary
from .render_template import render_report
