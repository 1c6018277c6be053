from .chart import ChartArrowSchema, ChartEntrySchema, ChartFormat, ChartSchema

__all__ = ["ChartArrowSchema", "ChartEntrySchema", "ChartFormat", "ChartSchema"]
