package Drawing.Shapes.coreElements;

import java.awt.Color;
import java.awt.Graphics;

// This class declares a line shape for drawing
public class MyLine extends MyShape {
    // no-argument constructor
    public MyLine() {
        super();
    }

    // constructor with input values
    public MyLine(int x1, int y1, int x2, int y2, Color shapeColor) {
        super(x1, y1, x2, y2, shapeColor);
    }

    // draw a line
    public void draw(Graphics g) {
        g.setColor(getColor());
        g.drawLine(this.X1, this.Y1, this.X2, this.Y2);
    }
}
